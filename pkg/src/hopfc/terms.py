"""Sliced terms of the free braided category on one object.

A term is a vertical stack of slices, read bottom to top.  Each slice is a
single generator box padded by identity strands on both sides, so rule
matching and evaluation stay local and interchange equality becomes a
reordering problem on the slice list.

Generators (with arities in -> out):

    Delta 1->2, Eps 1->0, S 1->1, Sinv 1->1, OmegaPlus 2->0, OmegaMinus 2->0,
    ThetaPlus 1->0, ThetaMinus 1->0, BraidPlus 2->2, BraidMinus 2->2.

A Hopf diagram is a term with codomain 0; composing Hopf diagrams uses the
convolution product, with the coproduct of the n-fold tensor coalgebra built
from positive braidings.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class ArityError(ValueError):
    """Domain/codomain mismatch in a composition."""


class Generator(Enum):
    DELTA = "delta"
    EPS = "eps"
    S = "s"
    SINV = "sinv"
    OMEGA_PLUS = "w+"
    OMEGA_MINUS = "w-"
    THETA_PLUS = "t+"
    THETA_MINUS = "t-"
    BRAID_PLUS = "x+"
    BRAID_MINUS = "x-"


_ARITIES = {
    Generator.DELTA: (1, 2),
    Generator.EPS: (1, 0),
    Generator.S: (1, 1),
    Generator.SINV: (1, 1),
    Generator.OMEGA_PLUS: (2, 0),
    Generator.OMEGA_MINUS: (2, 0),
    Generator.THETA_PLUS: (1, 0),
    Generator.THETA_MINUS: (1, 0),
    Generator.BRAID_PLUS: (2, 2),
    Generator.BRAID_MINUS: (2, 2),
}


def arity(gen: Generator) -> tuple[int, int]:
    return _ARITIES[gen]


@dataclass(frozen=True)
class Slice:
    """One generator box with ``left`` and ``right`` identity strands."""

    left: int
    gen: Generator
    right: int

    def __post_init__(self):
        if self.left < 0 or self.right < 0:
            raise ValueError("negative identity padding")

    @property
    def width_in(self) -> int:
        return self.left + arity(self.gen)[0] + self.right

    @property
    def width_out(self) -> int:
        return self.left + arity(self.gen)[1] + self.right

    def shifted(self, dl: int, dr: int = 0) -> "Slice":
        return Slice(self.left + dl, self.gen, self.right + dr)


@dataclass(frozen=True)
class BraidedTerm:
    """A morphism *^dom -> *^cod as a bottom-to-top slice list."""

    dom: int
    slices: tuple[Slice, ...]

    def __post_init__(self):
        if self.dom < 0:
            raise ValueError("negative domain")
        w = self.dom
        for k, s in enumerate(self.slices):
            if s.width_in != w:
                raise ArityError(
                    f"slice {k}: width_in {s.width_in} != incoming width {w}"
                )
            w = s.width_out

    @property
    def cod(self) -> int:
        w = self.dom
        for s in self.slices:
            w = s.width_out
        return w

    def widths(self) -> list[int]:
        """Strand counts at every level, from dom (index 0) to cod."""
        ws = [self.dom]
        for s in self.slices:
            ws.append(s.width_out)
        return ws


def term(dom: int, slices=()) -> BraidedTerm:
    return BraidedTerm(dom, tuple(slices))


def identity_term(n: int) -> BraidedTerm:
    return BraidedTerm(n, ())


def gen_term(gen: Generator) -> BraidedTerm:
    n_in, _ = arity(gen)
    return BraidedTerm(n_in, (Slice(0, gen, 0),))


def term_compose(f: BraidedTerm, g: BraidedTerm) -> BraidedTerm:
    """f followed by g (g stacked on top of f)."""
    if f.cod != g.dom:
        raise ArityError(f"cod(f) = {f.cod} != dom(g) = {g.dom}")
    return BraidedTerm(f.dom, f.slices + g.slices)


def term_tensor(f: BraidedTerm, g: BraidedTerm) -> BraidedTerm:
    """Horizontal composition: f left of g, f's slices executed first."""
    fs = tuple(s.shifted(0, g.dom) for s in f.slices)
    gs = tuple(s.shifted(f.cod, 0) for s in g.slices)
    return BraidedTerm(f.dom + g.dom, fs + gs)


def delta_power(n: int) -> BraidedTerm:
    """Left comb Delta^(n): 1 -> n+1, with Delta^(n+1) = (Delta^(n) x id) Delta."""
    if n < 0:
        raise ValueError("negative comb size")
    return BraidedTerm(1, tuple(Slice(0, Generator.DELTA, k) for k in range(n)))


@dataclass(frozen=True)
class HopfDiagram:
    """A form *^n -> 1, i.e. a braided term with codomain 0."""

    term: BraidedTerm

    def __post_init__(self):
        if self.term.cod != 0:
            raise ArityError(f"Hopf diagram must have cod 0, got {self.term.cod}")

    @property
    def n(self) -> int:
        return self.term.dom


def conv_identity(n: int) -> HopfDiagram:
    """eps^(x n): the unit of the convolution product on n inputs."""
    slices = tuple(Slice(0, Generator.EPS, n - 1 - k) for k in range(n))
    return HopfDiagram(BraidedTerm(n, slices))


def conv_delta(n: int) -> BraidedTerm:
    """Coproduct of the coalgebra *^n: n -> 2n.

    Built by the recursion Delta_{C (x) C'} = (id (x) tau_{C,C'} (x) id)
    (Delta (x) Delta') with all braidings positive; output order is first
    copies then second copies.
    """
    if n == 0:
        return identity_term(0)
    if n == 1:
        return gen_term(Generator.DELTA)
    inner = conv_delta(n - 1)
    slices = [Slice(0, Generator.DELTA, n - 1)]
    slices += [s.shifted(2, 0) for s in inner.slices]
    # strand 2 (the second copy of strand 1) crosses right past the n-1
    # first copies of the remaining strands
    for k in range(n - 1):
        slices.append(Slice(1 + k, Generator.BRAID_PLUS, 2 * n - 3 - k))
    return BraidedTerm(n, tuple(slices))


def conv_compose(d1: HopfDiagram, d2: HopfDiagram) -> HopfDiagram:
    """Convolution product d1 * d2 = (d1 (x) d2) Delta_{C^n}."""
    if d1.n != d2.n:
        raise ArityError(f"input counts differ: {d1.n} != {d2.n}")
    body = term_tensor(d1.term, d2.term)
    return HopfDiagram(term_compose(conv_delta(d1.n), body))


def conv_tensor(d1: HopfDiagram, d2: HopfDiagram) -> HopfDiagram:
    """Monoidal product of Hopf diagrams (juxtaposition)."""
    return HopfDiagram(term_tensor(d1.term, d2.term))


# ---------------------------------------------------------------------------
# text format: `hd n=<dom>` header then one `<left> <gen> <right>` line per
# slice, bottom to top
# ---------------------------------------------------------------------------

_GEN_NAMES = {g.value: g for g in Generator}


def format_term(t: BraidedTerm) -> str:
    lines = [f"hd n={t.dom}"]
    for s in t.slices:
        lines.append(f"{s.left} {s.gen.value} {s.right}")
    return "\n".join(lines) + "\n"


class TermParseError(ValueError):
    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


def parse_term(text: str) -> BraidedTerm:
    lines = [ln.strip() for ln in text.splitlines()]
    rows = [(i + 1, ln) for i, ln in enumerate(lines) if ln and not ln.startswith("#")]
    if not rows:
        raise TermParseError(1, "empty term file")
    no, header = rows[0]
    if not header.startswith("hd"):
        raise TermParseError(no, f"expected 'hd n=<dom>' header, got {header!r}")
    try:
        dom = int(header.split("n=", 1)[1])
    except (IndexError, ValueError):
        raise TermParseError(no, f"malformed header {header!r}") from None
    width = dom
    slices = []
    for no, ln in rows[1:]:
        parts = ln.split()
        if len(parts) != 3:
            raise TermParseError(no, f"expected '<left> <gen> <right>', got {ln!r}")
        try:
            left, right = int(parts[0]), int(parts[2])
        except ValueError:
            raise TermParseError(no, f"non-integer padding in {ln!r}") from None
        gen = _GEN_NAMES.get(parts[1])
        if gen is None:
            raise TermParseError(no, f"unknown generator {parts[1]!r}")
        s = Slice(left, gen, right)
        if s.width_in != width:
            raise TermParseError(
                no, f"width chain broken: slice needs {s.width_in} strands, have {width}"
            )
        width = s.width_out
        slices.append(s)
    return BraidedTerm(dom, tuple(slices))
