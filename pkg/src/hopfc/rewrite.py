"""Rewriting of braided terms: antipode elimination and canonical forms.

The antipode eliminator implements the rules

    Delta S^±  -> (S^± x S^±) tau^± Delta        eps S^±    -> eps
    S S^-1     -> id                             S^-1 S     -> id
    theta_± S^± -> theta_±
    w+ (S x 1)   -> w-          w+ (1 x S)   -> w-
    w+ (S^-1 x 1)-> w- tau      w+ (1 x S^-1)-> w- tau
    w- (S x 1)   -> w+ tau^-1   w- (1 x S)   -> w+ tau^-1
    w- (S^-1 x 1)-> w+          w- (1 x S^-1)-> w+

together with naturality slides of S^± across braidings (an S entering one
leg of a braiding moves to the other output leg), which are implicit in the
free braided category but explicit on sliced terms.

Termination: each elimination step strictly decreases the lexicographic
measure (sum over S-letters of 3^(number of coproducts above on the strand
path), number of S-letters, summed height of S-letters below the top).

Canonicalization applies antipode elimination, counit eliminations,
left-comb rewriting of coproduct trees, cancellation of adjacent inverse
braidings, naturality slides of strand-killing generators, and a
deterministic interchange normal form.  It is a normal form heuristic, not a
decision procedure for equality in the quotient category.
"""

from __future__ import annotations

from dataclasses import dataclass

from .terms import ArityError, BraidedTerm, Generator, Slice, arity

_CONSUMERS_1 = {Generator.EPS, Generator.THETA_PLUS, Generator.THETA_MINUS}
_BRAIDS = {Generator.BRAID_PLUS, Generator.BRAID_MINUS}
_OMEGAS = {Generator.OMEGA_PLUS, Generator.OMEGA_MINUS}
_ANTIPODES = {Generator.S, Generator.SINV}


def wire_table(t: BraidedTerm):
    """Wire ids per slice: returns (gin, gout, dom_wires, cod_wires).

    gin[i] / gout[i] are the wires consumed / produced by the generator box
    of slice i; identity lanes pass wires through unchanged.
    """
    fresh = iter(range(10 ** 9)).__next__
    lanes = [fresh() for _ in range(t.dom)]
    dom_wires = list(lanes)
    gin, gout = [], []
    for s in t.slices:
        n_in, n_out = arity(s.gen)
        ins = tuple(lanes[s.left : s.left + n_in])
        outs = tuple(fresh() for _ in range(n_out))
        lanes[s.left : s.left + n_in] = list(outs)
        gin.append(ins)
        gout.append(outs)
    return gin, gout, dom_wires, lanes


@dataclass(frozen=True)
class Redex:
    """An applicable antipode rule: the S slice and its consumer slice."""

    kind: str  # 'cancel' | 'absorb' | 'omega' | 'delta' | 'slide'
    s_index: int
    s_lane: int
    consumer: int
    leg: int  # which input leg of the consumer the S feeds (0-based)


def find_antipode_redexes(t: BraidedTerm) -> list[Redex]:
    gin, gout, _, cod_wires = wire_table(t)
    redexes = []
    for i, s in enumerate(t.slices):
        if s.gen not in _ANTIPODES:
            continue
        wire = gout[i][0]
        consumer = None
        for j in range(i + 1, len(t.slices)):
            if wire in gin[j]:
                consumer = j
                break
        if consumer is None:
            continue  # residual antipode adjacent to the codomain
        leg = gin[consumer].index(wire)
        cgen = t.slices[consumer].gen
        if cgen in _BRAIDS:
            kind = "slide"
        elif cgen is Generator.DELTA:
            kind = "delta"
        elif cgen in _CONSUMERS_1:
            kind = "absorb"
        elif cgen in _OMEGAS:
            kind = "omega"
        elif cgen in _ANTIPODES:
            if cgen is not s.gen:
                kind = "cancel"
            else:
                continue  # same-sign stack: resolve the upper one first
        else:
            continue
        redexes.append(Redex(kind, i, s.left, consumer, leg))
    return redexes


class RuleSet:
    """Rewrite targets; overridable for negative-control fixtures."""

    def absorb_target(self, gen: Generator) -> Generator:
        return gen

    def omega_target(self, omega: Generator, s_gen: Generator):
        """Return (new omega generator, braid generator to insert or None)."""
        plus = omega is Generator.OMEGA_PLUS
        s_plain = s_gen is Generator.S
        if plus and s_plain:
            return Generator.OMEGA_MINUS, None
        if plus and not s_plain:
            return Generator.OMEGA_MINUS, Generator.BRAID_PLUS
        if not plus and s_plain:
            return Generator.OMEGA_PLUS, Generator.BRAID_MINUS
        return Generator.OMEGA_PLUS, None


DEFAULT_RULES = RuleSet()


def apply_redex(t: BraidedTerm, r: Redex, rules: RuleSet = DEFAULT_RULES) -> BraidedTerm:
    slices = list(t.slices)
    s_slice = slices[r.s_index]
    s_gen = s_slice.gen
    c_slice = slices[r.consumer]
    if r.kind == "cancel":
        del slices[r.consumer]
        del slices[r.s_index]
    elif r.kind == "absorb":
        tgt = rules.absorb_target(c_slice.gen)
        slices[r.consumer] = Slice(c_slice.left, tgt, c_slice.right)
        del slices[r.s_index]
    elif r.kind == "omega":
        new_omega, braid = rules.omega_target(c_slice.gen, s_gen)
        slices[r.consumer] = Slice(c_slice.left, new_omega, c_slice.right)
        if braid is not None:
            slices.insert(r.consumer, Slice(c_slice.left, braid, c_slice.right))
        del slices[r.s_index]
    elif r.kind == "delta":
        braid = Generator.BRAID_PLUS if s_gen is Generator.S else Generator.BRAID_MINUS
        left, right = c_slice.left, c_slice.right
        # widths just above the Delta: left + 2 + right
        insert = [
            Slice(left, braid, right),
            Slice(left, s_gen, right + 1),
            Slice(left + 1, s_gen, right),
        ]
        slices[r.consumer + 1 : r.consumer + 1] = insert
        del slices[r.s_index]
    elif r.kind == "slide":
        out_lane = c_slice.left + (1 - r.leg)
        width_above = c_slice.left + 2 + c_slice.right
        slices.insert(
            r.consumer + 1, Slice(out_lane, s_gen, width_above - out_lane - 1)
        )
        del slices[r.s_index]
    else:
        raise ValueError(f"unknown redex kind {r.kind}")
    return BraidedTerm(t.dom, tuple(slices))


def antipode_count(t: BraidedTerm) -> int:
    return sum(1 for s in t.slices if s.gen in _ANTIPODES)


def delta_depth_measure(t: BraidedTerm) -> int:
    """Sum over S-letters of 3^(coproducts above on the strand path)."""
    gin, gout, _, _ = wire_table(t)
    consumer_of = {}
    for j, ins in enumerate(gin):
        for w in ins:
            consumer_of[w] = j

    def deltas_above(wire: int) -> int:
        j = consumer_of.get(wire)
        if j is None:
            return 0
        gen = t.slices[j].gen
        if gen is Generator.DELTA:
            return 1 + deltas_above(gout[j][0]) + deltas_above(gout[j][1])
        if gen in _ANTIPODES:
            return deltas_above(gout[j][0])
        if gen in _BRAIDS:
            leg = gin[j].index(wire)
            return deltas_above(gout[j][1 - leg])
        return 0

    total = 0
    for i, s in enumerate(t.slices):
        if s.gen in _ANTIPODES:
            total += 3 ** deltas_above(gout[i][0])
    return total


def eliminate_antipodes_report(t: BraidedTerm, rules: RuleSet = DEFAULT_RULES):
    """Rewrite until no rule applies; returns (term, residual S count)."""
    steps = 0
    while True:
        redexes = find_antipode_redexes(t)
        if not redexes:
            return t, antipode_count(t)
        r = min(redexes, key=lambda r: (r.s_index, r.s_lane))
        t = apply_redex(t, r, rules)
        steps += 1
        if steps > 100000:
            raise RuntimeError("antipode elimination failed to terminate")


def eliminate_antipodes(t: BraidedTerm, rules: RuleSet = DEFAULT_RULES) -> BraidedTerm:
    out, residual = eliminate_antipodes_report(t, rules)
    if residual and t.cod == 0:
        raise RuntimeError("cod-0 term left residual antipodes")
    return out


# ---------------------------------------------------------------------------
# interchange normal form and structural cleanups
# ---------------------------------------------------------------------------


def interchange_sort(t: BraidedTerm) -> BraidedTerm:
    """Deterministic normal form for the interchange relation.

    Greedy schedule: repeatedly emit, among slices whose wire dependencies
    are satisfied, the one whose box sits leftmost in the current frontier.
    """
    gin, gout, dom_wires, _ = wire_table(t)
    producer = {}
    for j, outs in enumerate(gout):
        for w in outs:
            producer[w] = j
    n = len(t.slices)
    deps = [set() for _ in range(n)]
    for j, ins in enumerate(gin):
        for w in ins:
            if w in producer:
                deps[j].add(producer[w])
    emitted = [False] * n
    remaining_deps = [set(d) for d in deps]
    frontier = list(dom_wires)
    order = []
    new_slices = []
    for _ in range(n):
        best = None
        best_pos = None
        for j in range(n):
            if emitted[j] or remaining_deps[j]:
                continue
            pos = frontier.index(gin[j][0])
            if best is None or pos < best_pos:
                best, best_pos = j, pos
        if best is None:
            raise ArityError("cyclic wire dependencies")
        ins = gin[best]
        pos = frontier.index(ins[0])
        if tuple(frontier[pos : pos + len(ins)]) != ins:
            raise ArityError("interchange sort: wires not contiguous")
        frontier[pos : pos + len(ins)] = list(gout[best])
        s = t.slices[best]
        new_slices.append(Slice(pos, s.gen, len(frontier) - pos - arity(s.gen)[1]))
        emitted[best] = True
        order.append(best)
        for d in remaining_deps:
            d.discard(best)
    return BraidedTerm(t.dom, tuple(new_slices))


def _dag(t: BraidedTerm):
    """Boxes as (gen, in_wires, out_wires) plus the domain wire list."""
    gin, gout, dom_wires, _ = wire_table(t)
    boxes = [(s.gen, list(gin[i]), list(gout[i])) for i, s in enumerate(t.slices)]
    return boxes, dom_wires


def _schedule(dom: int, dom_wires, boxes) -> BraidedTerm:
    """Greedy interchange-canonical slice list for a planar wire DAG."""
    producer = {}
    for j, (_, _, outs) in enumerate(boxes):
        for w in outs:
            producer[w] = j
    remaining = [
        {producer[w] for w in ins if w in producer} for (_, ins, _) in boxes
    ]
    emitted = [False] * len(boxes)
    frontier = list(dom_wires)
    new_slices = []
    for _ in range(len(boxes)):
        best = best_pos = None
        for j, (gen, ins, outs) in enumerate(boxes):
            if emitted[j] or remaining[j]:
                continue
            pos = frontier.index(ins[0])
            if best is None or pos < best_pos:
                best, best_pos = j, pos
        if best is None:
            raise ArityError("cyclic wire dependencies")
        gen, ins, outs = boxes[best]
        pos = frontier.index(ins[0])
        if frontier[pos : pos + len(ins)] != ins:
            raise ArityError("schedule: wires not contiguous")
        frontier[pos : pos + len(ins)] = outs
        new_slices.append(Slice(pos, gen, len(frontier) - pos - len(outs)))
        emitted[best] = True
        for d in remaining:
            d.discard(best)
    return BraidedTerm(dom, tuple(new_slices))


def _structural_step(boxes) -> bool:
    """Apply one wire-level cleanup in place; True if anything changed."""
    producer = {}
    for j, (_, _, outs) in enumerate(boxes):
        for w in outs:
            producer[w] = j

    def rename(old: int, new: int):
        for _, ins, _ in boxes:
            for k, w in enumerate(ins):
                if w == old:
                    ins[k] = new

    for j, (gen, ins, outs) in enumerate(boxes):
        src = producer.get(ins[0])
        if src is None:
            continue
        sgen, sins, souts = boxes[src]
        # counit on a coproduct leg: (eps x id) Delta = id = (id x eps) Delta
        if gen is Generator.EPS and sgen is Generator.DELTA:
            leg = souts.index(ins[0])
            survivor = souts[1 - leg]
            for k in sorted((j, src), reverse=True):
                del boxes[k]
            rename(survivor, sins[0])
            return True
        # strand killers slide down through braidings
        if gen in _CONSUMERS_1 and sgen in _BRAIDS:
            leg = souts.index(ins[0])
            ins[0] = sins[1 - leg]
            rename(souts[1 - leg], sins[leg])
            del boxes[src]
            return True
        # adjacent inverse braidings cancel
        if (
            gen in _BRAIDS
            and sgen in _BRAIDS
            and gen is not sgen
            and ins == souts
        ):
            for k in sorted((j, src), reverse=True):
                del boxes[k]
            rename(outs[0], sins[0])
            rename(outs[1], sins[1])
            return True
        # coproduct trees rotate to the left comb
        if gen is Generator.DELTA and sgen is Generator.DELTA and ins[0] == souts[1]:
            a, mid = souts
            b, c = outs
            boxes[src] = (Generator.DELTA, sins, [mid, c])
            boxes[j] = (Generator.DELTA, [mid], [a, b])
            return True
    return False


def structural_canonical(t: BraidedTerm) -> BraidedTerm:
    """Interchange normal form plus wire-level cleanups, to a fixpoint."""
    boxes, dom_wires = _dag(t)
    steps = 0
    while _structural_step(boxes):
        steps += 1
        if steps > 10000:
            raise RuntimeError("structural canonicalization failed to terminate")
    return _schedule(t.dom, dom_wires, boxes)


def canonicalize(t: BraidedTerm) -> BraidedTerm:
    """Antipode elimination followed by the structural normal form."""
    t, _ = eliminate_antipodes_report(t)
    return structural_canonical(t)


# ---------------------------------------------------------------------------
# local confluence search
# ---------------------------------------------------------------------------


@dataclass
class ConfluenceReport:
    pairs_checked: int
    failures: int
    terms_seen: int
    failing_examples: list


class SearchBudgetExceeded(RuntimeError):
    pass


def _descendant_normal_forms(t: BraidedTerm, rules: RuleSet, budget: list[int]):
    """All normal forms reachable from t, keyed by structural canonical form."""
    seen = set()
    normals = set()
    stack = [t]
    while stack:
        cur = stack.pop()
        key = (cur.dom, cur.slices)
        if key in seen:
            continue
        seen.add(key)
        budget[0] -= 1
        if budget[0] < 0:
            raise SearchBudgetExceeded("confluence search exceeded node budget")
        redexes = find_antipode_redexes(cur)
        if not redexes:
            nf = structural_canonical(cur)
            normals.add((nf.dom, nf.slices))
            continue
        for r in redexes:
            stack.append(apply_redex(cur, r, rules))
    return normals


def _enumerate_terms(max_size: int, max_dom: int, budget: list[int]):
    """All well-formed terms with <= max_size slices and an S letter."""

    def options(width: int):
        opts = []
        for gen in Generator:
            n_in, _ = arity(gen)
            for left in range(width - n_in + 1):
                opts.append(Slice(left, gen, width - n_in - left))
        return opts

    def rec(dom: int, slices: list[Slice], width: int):
        budget[0] -= 1
        if budget[0] < 0:
            raise SearchBudgetExceeded("term enumeration exceeded node budget")
        if slices and any(s.gen in _ANTIPODES for s in slices):
            yield BraidedTerm(dom, tuple(slices))
        if len(slices) == max_size:
            return
        for s in options(width):
            slices.append(s)
            yield from rec(dom, slices, s.width_out)
            slices.pop()

    for dom in range(1, max_dom + 1):
        yield from rec(dom, [], dom)


def local_confluence_report(
    max_size: int,
    rules: RuleSet = DEFAULT_RULES,
    node_budget: int = 4_000_000,
    max_dom: int | None = None,
) -> ConfluenceReport:
    """Exhaustively check joinability of all overlapping redex pairs.

    Enumerates every well-formed term with at most ``max_size`` slices (and
    domain up to ``max_dom``) carrying at least two redexes that share a
    slice, applies each redex of every such pair, and rewrites both results
    to their sets of normal forms; the pair fails if the sets are disjoint
    modulo the structural normal form.
    """
    if max_size < 1:
        raise ValueError("max_size must be >= 1")
    if max_dom is None:
        max_dom = max_size + 2
    budget = [node_budget]
    pairs = failures = terms_seen = 0
    failing = []
    for t in _enumerate_terms(max_size, max_dom, budget):
        terms_seen += 1
        redexes = find_antipode_redexes(t)
        if len(redexes) < 2:
            continue
        for i in range(len(redexes)):
            for j in range(i + 1, len(redexes)):
                a, b = redexes[i], redexes[j]
                shared = {a.s_index, a.consumer} & {b.s_index, b.consumer}
                if not shared:
                    continue
                pairs += 1
                na = _descendant_normal_forms(apply_redex(t, a, rules), rules, budget)
                nb = _descendant_normal_forms(apply_redex(t, b, rules), rules, budget)
                if not (na & nb):
                    failures += 1
                    if len(failing) < 10:
                        failing.append((t, a, b))
    return ConfluenceReport(pairs, failures, terms_seen, failing)
