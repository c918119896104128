"""Lower bounds for the effective number and the asymptotic sweep.

sign_change_bound(k, lam, mu) is the maximal number of sign changes over
all sequences k = k_0, k_1, ..., where each step adds a part of lam or
subtracts a part of mu, each part used exactly once. Zeros break a run:
a change is scored only when consecutive values have strictly opposite
signs. In every call driven by the constructions k is odd and all steps
are even, so zeros never occur there.

existence_case evaluates the three sufficient conditions for effective
non-zigzag covers (split by l(lambda_0) vs l(mu_0), with a direct branch
when some threshold expression is positive and a max-negative branch
otherwise); construct_witness builds an explicit cover following the
constructive proof, and appendix_constants/lower_bound_estimate evaluate
the six-case factorial bound on the effective non-zigzag number Z'.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import factorial

from .budget import Budget, ensure_budget
from .errors import ConstructionFailureError, InfeasibleError
from .partitions import (
    Partition,
    as_partition,
    branch_count,
    extend_with_ones,
    tail_decompose,
)
from .realtrop import splitting_table
from .tropical import TropicalCover, enumerate_covers, mult_complex
from .zigzag import (
    EFFECTIVE_NONZIGZAG,
    ZIGZAG,
    classify_cover,
    in_excluded_family,
)

# -- maximal sign changes ------------------------------------------------------


def sign_change_bound(k: int, lam, mu, budget: Budget | None = None) -> int:
    """Max sign changes over interleavings of +lam steps and -mu steps from k."""
    lam, mu = as_partition(lam), as_partition(mu)
    budget = ensure_budget(budget)
    memo: dict = {}

    def best(rem_l, rem_m, cur):
        if not rem_l and not rem_m:
            return 0
        key = (rem_l, rem_m, cur)
        if key in memo:
            return memo[key]
        budget.tick()
        out = 0
        for pool, sign in ((rem_l, 1), (rem_m, -1)):
            last = None
            for i, v in enumerate(pool):
                if v == last:
                    continue
                last = v
                nxt = cur + sign * v
                score = 1 if cur * nxt < 0 else 0
                rest = (rem_l[:i] + rem_l[i + 1:], rem_m) if sign > 0 else (
                    rem_l, rem_m[:i] + rem_m[i + 1:]
                )
                out = max(out, score + best(rest[0], rest[1], nxt))
        memo[key] = out
        return out

    return best(lam, mu, k)


# -- existence of effective non-zigzag covers -----------------------------------


@dataclass(frozen=True)
class ExistenceCase:
    kind: str     # 'eq' | 'gt' | 'lt'  (l(lambda_0) vs l(mu_0))
    variant: str  # 'direct' | 'max_negative'


def _threshold_branch(ts):
    """RHS of the threshold and the branch tag; None when every t is zero."""
    if any(t > 0 for t in ts):
        return 0, "direct"
    negatives = [t for t in ts if t < 0]
    if negatives:
        return -max(negatives), "max_negative"
    return None, None


def existence_case(g: int, lam, mu) -> ExistenceCase | None:
    lam, mu = as_partition(lam), as_partition(mu)
    if sum(lam) != sum(mu):
        raise ValueError("degrees must agree")
    tl, tm = tail_decompose(lam), tail_decompose(mu)
    l0, m0 = tl.zero, tm.zero
    L, M = len(l0), len(m0)
    if L == M >= 1 and len(tm.oo) >= 1:
        ts = [(sum(l0) - a) - (sum(m0) - b) for a in l0 for b in m0]
        rhs, variant = _threshold_branch(ts)
        if variant and len(mu) + 2 * g - 3 * L > rhs:
            return ExistenceCase("eq", variant)
        return None
    if L > M and 2 * tm.ones_in_oo > L - M:
        ts = [
            sum(l0) - l0[i] - l0[j] - sum(m0) - L + M + 2
            for i, j in combinations(range(L), 2)
        ]
        rhs, variant = _threshold_branch(ts)
        if variant and len(mu) + 2 * g - 3 * L > rhs:
            return ExistenceCase("gt", variant)
        return None
    if M > L and len(tm.oo) >= 1 and 2 * tl.ones_in_oo > M - L:
        ts = [sum(l0) - (sum(m0) - b) - L + M - 1 for b in m0]
        rhs, variant = _threshold_branch(ts)
        if variant and len(mu) + 2 * g - 3 * M > rhs:
            return ExistenceCase("lt", variant)
        return None
    return None


# -- string plans ----------------------------------------------------------------


@dataclass
class _Plan:
    case: ExistenceCase
    strings: list               # (left lambda-end weights, right mu-end weights)
    nets: list[int]             # flow through E_i toward S_1..S_i, i = 1..n-1
    l: int                      # weight of the first end of S_1
    j1_part: int | None         # chosen mu_0 part for eq/lt
    i2_part: int | None         # second chosen lambda_0 part for gt
    lam_fork_tails: list[int]   # oo pair values labelled by lambda
    mu_fork_tails: list[int]
    lam_end_tails: list[int]    # even part values labelled by lambda
    mu_end_tails: list[int]

    @property
    def w_e1(self) -> int:
        return abs(self.nets[0])

    @property
    def e1_incoming(self) -> bool:
        return self.nets[0] > 0


def _pick_pair(avail_a, avail_b, score, want):
    """First pair in descending-by-value order meeting the predicate."""
    best = None
    for a in avail_a:
        for b in avail_b:
            t = score(a, b)
            if want == "any":
                return a, b
            if want == "positive" and t > 0:
                return a, b
            if want == "nonzero" and t != 0:
                return a, b
            if want == "max_negative" and t < 0 and (best is None or t > best[0]):
                best = (t, a, b)
    if best is not None:
        return best[1], best[2]
    raise ConstructionFailureError(f"no admissible pair for {want}")


def _remove_one(values, x):
    out = list(values)
    out.remove(x)
    return out


def _string_plan(lam, mu, case: ExistenceCase) -> _Plan:
    lam, mu = as_partition(lam), as_partition(mu)
    tl, tm = tail_decompose(lam), tail_decompose(mu)
    l0, m0 = list(tl.zero), list(tm.zero)
    L, M = len(l0), len(m0)
    lam_oo, mu_oo = list(tl.oo), list(tm.oo)
    want1 = "positive" if case.variant == "direct" else "max_negative"

    strings, nets = [], []
    j1_part = i2_part = None

    if case.kind == "eq":
        a1, b1 = _pick_pair(l0, m0, lambda a, b: (sum(l0) - a) - (sum(m0) - b), want1)
        j1_part = b1
        strings.append(((a1,), (b1,)))
        rl, rm = _remove_one(l0, a1), _remove_one(m0, b1)
        net = sum(rl) - sum(rm)
        nets.append(net)
        first = a1
        while len(rl) > 1:
            a, b = _pick_pair(
                rl, rm, lambda a, b: (sum(rl) - a) - (sum(rm) - b), "nonzero"
            )
            strings.append(((a,), (b,)))
            rl, rm = _remove_one(rl, a), _remove_one(rm, b)
            nets.append(sum(rl) - sum(rm))
        strings.append(((rl[0],), (rm[0],)))
        # the flow into the last string is the net recorded before it; no pop

    elif case.kind == "gt":
        k_case = (L - M) // 2
        n_strings = L - 1
        a1, a2 = _pick_pair(
            l0,
            l0,
            lambda a, b: (sum(l0) - a - b - sum(m0) - (L - M) + 2) if a != b else 0,
            want1,
        )
        i2_part = a2
        first = a1
        strings.append(((a1, a2), ()))
        rl = _remove_one(_remove_one(l0, a1), a2)
        rm = list(m0)
        ones_due = 2 * (k_case - 1)  # mu-ones still to be used by later strings
        net = sum(rl) - (sum(rm) + ones_due)
        nets.append(net)
        for idx in range(M):
            final = len(strings) == n_strings - 1
            a, b = _pick_pair(
                rl,
                rm,
                lambda a, b: (sum(rl) - a) - (sum(rm) - b + ones_due),
                "any" if final else "nonzero",
            )
            strings.append(((a,), (b,)))
            rl, rm = _remove_one(rl, a), _remove_one(rm, b)
            nets.append(sum(rl) - (sum(rm) + ones_due))
        for _ in range(k_case - 1):
            ones_due -= 2
            strings.append(((), (1, 1)))
            nets.append(sum(rl) - ones_due)
            a, b = sorted(rl, reverse=True)[:2]
            strings.append(((a, b), ()))
            rl = _remove_one(_remove_one(rl, a), b)
            nets.append(sum(rl) - ones_due)
        nets.pop()  # everything consumed: the trailing entry is 0
        consumed = k_case - 1
        if mu_oo.count(1) < consumed:
            raise ConstructionFailureError("not enough paired ones in mu")
        for _ in range(consumed):
            mu_oo.remove(1)

    else:  # lt
        k_neg = (M - L) // 2
        n_strings = M
        b1 = _pick_pair(
            [1], m0, lambda _a, b: sum(l0) - (sum(m0) - b) - L + M - 1, want1
        )[1]
        j1_part = b1
        first = 1
        strings.append(((1,), (b1,)))
        rm = _remove_one(m0, b1)
        rl = list(l0)
        lam_ones_due = 1 + 2 * (k_neg - 1)  # lambda-ones used by later strings
        net = (sum(rl) + lam_ones_due) - sum(rm)
        nets.append(net)
        b2 = _pick_pair(
            [1],
            rm,
            lambda _a, b: (sum(rl) + lam_ones_due - 1) - (sum(rm) - b),
            "any" if n_strings == 2 else "nonzero",
        )[1]
        strings.append(((1,), (b2,)))
        rm = _remove_one(rm, b2)
        lam_ones_due -= 1
        nets.append(sum(rl) + lam_ones_due - sum(rm))
        for idx in range(L):
            final = len(strings) == n_strings - 1
            a, b = _pick_pair(
                rl,
                rm,
                lambda a, b: (sum(rl) - a + lam_ones_due) - (sum(rm) - b),
                "any" if final else "nonzero",
            )
            strings.append(((a,), (b,)))
            rl, rm = _remove_one(rl, a), _remove_one(rm, b)
            nets.append(sum(rl) + lam_ones_due - sum(rm))
        for _ in range(k_neg - 1):
            lam_ones_due -= 2
            strings.append(((1, 1), ()))
            nets.append(lam_ones_due - sum(rm))
            a, b = sorted(rm, reverse=True)[:2]
            strings.append(((), (a, b)))
            rm = _remove_one(_remove_one(rm, a), b)
            nets.append(lam_ones_due - sum(rm))
        nets.pop()  # everything consumed: the trailing entry is 0
        consumed = k_neg
        if lam_oo.count(1) < consumed:
            raise ConstructionFailureError("not enough paired ones in lambda")
        for _ in range(consumed):
            lam_oo.remove(1)

    if any(n == 0 for n in nets):
        raise ConstructionFailureError("a connector received weight zero")
    return _Plan(
        case=case,
        strings=strings,
        nets=nets,
        l=first,
        j1_part=j1_part,
        i2_part=i2_part,
        lam_fork_tails=sorted(lam_oo, reverse=True),
        mu_fork_tails=sorted(mu_oo, reverse=True),
        lam_end_tails=sorted([2 * h for h in tl.two_o + tl.two_e], reverse=True),
        mu_end_tails=sorted([2 * h for h in tm.two_o + tm.two_e], reverse=True),
    )


# -- appendix constants ----------------------------------------------------------


@dataclass(frozen=True)
class AppendixConstants:
    case: ExistenceCase
    n1: int
    n2: int
    n3: int
    m1: int
    m2: int
    k: int                      # signed weight of E_1: positive when incoming at v_1
    lambda_star: Partition      # entries from the tail decomposition domain
    star_two_o: Partition
    star_two_e: Partition
    star_oo: Partition


def _min_prefix(needed, base, pool):
    """Smallest prefix count of the descending pool pushing base over needed."""
    total = base
    if total > needed:
        return 0
    for count, v in enumerate(pool, start=1):
        total += v
        if total > needed:
            return count
    raise InfeasibleError("threshold unreachable even using every tail")


def appendix_constants(lam, mu, case: ExistenceCase) -> AppendixConstants:
    lam, mu = as_partition(lam), as_partition(mu)
    plan = _string_plan(lam, mu, case)
    tl = tail_decompose(lam)
    # strings S_2..S_{n-1} carry two connector vertices each, S_n one
    k_inner = 2 * (len(plan.strings) - 1) - 1
    k_signed = plan.nets[0]
    if plan.e1_incoming:
        return AppendixConstants(case, 0, 1, 1 + k_inner, 0, 0, k_signed, (), (), (), ())
    w = plan.w_e1
    l = plan.l
    two_o = sorted((2 * h for h in tl.two_o), reverse=True)
    two_e = sorted((2 * h for h in tl.two_e), reverse=True)
    oo = sorted((2 * p for p in tl.oo), reverse=True)
    n1 = _min_prefix(w, l + sum(two_o) + sum(two_e), oo)
    m1 = _min_prefix(w, l + sum(two_e) + sum(oo[:n1]), two_o)
    m2 = _min_prefix(w, l + sum(two_o[:m1]) + sum(oo[:n1]), two_e)
    n2 = n1 + m1 + m2 + 1
    star_two_o = as_partition(v // 2 for v in two_o[:m1])
    star_two_e = as_partition(v // 2 for v in two_e[:m2])
    star_oo = as_partition(v // 2 for v in oo[:n1])
    return AppendixConstants(
        case,
        n1,
        n2,
        n1 + n2 + k_inner,
        m1,
        m2,
        k_signed,
        as_partition(star_two_o + star_two_e + star_oo),
        star_two_o,
        star_two_e,
        star_oo,
    )


def _multiset_remove(values, removals):
    out = list(values)
    for x in removals:
        if x not in out:
            raise InfeasibleError(
                f"removal {x} exceeds the available tail entries {sorted(values)}"
            )
        out.remove(x)
    return as_partition(out)


def lower_bound_estimate(g: int, lam, mu, budget: Budget | None = None) -> int:
    """Six-case factorial lower bound for Z'_g(lam, mu)."""
    lam, mu = as_partition(lam), as_partition(mu)
    case = existence_case(g, lam, mu)
    if case is None:
        raise ValueError("no existence case applies; the bound is not defined")
    consts = appendix_constants(lam, mu, case)
    plan = _string_plan(lam, mu, case)
    tl, tm = tail_decompose(lam), tail_decompose(mu)
    L, M = len(tl.zero), len(tm.zero)
    star_shift = 2 * sum(consts.lambda_star)
    lam_steps, mu_steps = tl.tail, tm.tail
    if case.variant == "max_negative":
        lam_steps = _multiset_remove(lam_steps, consts.lambda_star)

    if case.kind == "eq":
        k0 = sum(tl.zero) - (sum(tm.zero) - plan.j1_part) + star_shift
    elif case.kind == "gt":
        k0 = (
            sum(tl.zero) - plan.i2_part - sum(tm.zero) - (L - M) + 2 + star_shift
        )
        mu_steps = _multiset_remove(mu_steps, [1] * (L - M - 2))
    else:  # lt
        k0 = sum(tl.zero) - (sum(tm.zero) - plan.j1_part) - L + M + star_shift
        lam_steps = _multiset_remove(lam_steps, [1] * (M - L))

    b = sign_change_bound(
        k0,
        tuple(2 * v for v in lam_steps),
        tuple(2 * v for v in mu_steps),
        budget,
    )
    return (
        factorial(consts.n1)
        * factorial(len(tl.oo) - consts.n1)
        * factorial(len(tm.oo))
        * factorial(b // 2)
        * factorial((b + 1) // 2)
    )


# -- witness construction ---------------------------------------------------------


class _GraphBuilder:
    def __init__(self):
        self.n_nodes = 0
        self.edges = []   # (tail, head, weight) over node ids / leaf markers
        self.leaves = 0

    def node(self):
        self.n_nodes += 1
        return self.n_nodes - 1

    def leaf(self, side):
        self.leaves += 1
        return (side, self.leaves)

    def edge(self, u, v, w):
        if w <= 0:
            raise ConstructionFailureError(f"constructed edge of weight {w}")
        self.edges.append((u, v, w))


def _attach_fork_tail(gb, v, p, side, cycles=0):
    """Odd symmetric fork of pair value p, through `cycles` balanced cycles."""
    f = gb.node()
    for _ in range(2):
        if side == "lam":
            gb.edge(gb.leaf("L"), f, p)
        else:
            gb.edge(f, gb.leaf("R"), p)
    cur = f
    for _ in range(cycles):
        a, b = gb.node(), gb.node()
        if side == "lam":
            gb.edge(cur, a, 2 * p)
            gb.edge(a, b, p)
            gb.edge(a, b, p)
            cur = b
        else:
            gb.edge(b, cur, 2 * p)
            gb.edge(a, b, p)
            gb.edge(a, b, p)
            cur = a
    if side == "lam":
        gb.edge(cur, v, 2 * p)
    else:
        gb.edge(v, cur, 2 * p)


def _build_string(gb, ends, attachments):
    """Lay out one string: signed running weight, one vertex per attachment.

    ends = (first, last) signed end weights: positive is a lambda end (flow
    enters the string), negative a mu end. attachments is a list of
    (flow, payload) pairs applied in order; payload receives (builder,
    vertex) to emit the attached edges, or None for connector endpoints
    emitted later. Returns the created vertices in order.
    """
    first, last = ends
    w = first
    prev = gb.leaf("L") if first > 0 else gb.leaf("R")
    verts = []
    for flow, payload in attachments:
        v = gb.node()
        verts.append(v)
        if w > 0:
            gb.edge(prev, v, w)
        else:
            gb.edge(v, prev, -w)
        w += flow
        if w == 0:
            raise ConstructionFailureError("string weight hit zero")
        if payload is not None:
            payload(gb, v)
        prev = v
    if w != last:
        raise ConstructionFailureError(f"string closes at {w}, expected {last}")
    if last > 0:
        gb.edge(prev, gb.leaf("R"), last)
    else:
        gb.edge(gb.leaf("L"), prev, -last)
    return verts


def _string_ends(left, right):
    if left and right:
        return (left[0], right[0])
    if left:
        return (left[0], -left[1])
    return (-right[0], right[1])


def construct_witness(g: int, lam, mu, case: ExistenceCase | None = None) -> TropicalCover:
    """Explicit effective non-zigzag cover for an instance with an existence case."""
    lam, mu = as_partition(lam), as_partition(mu)
    if case is None:
        case = existence_case(g, lam, mu)
    if case is None:
        raise ValueError("no existence case applies")
    plan = _string_plan(lam, mu, case)
    consts = appendix_constants(lam, mu, case)
    n = len(plan.strings)
    r = branch_count(g, lam, mu)

    # S_1 tail order follows the constructive proof: the lambda* tails come
    # before v_1 when E_1 is outgoing (their weight keeps the string
    # positive), then the remaining lambda tails, then the mu tails.
    lam_tails = [("fork", p) for p in plan.lam_fork_tails]
    lam_tails += [("end", v) for v in plan.lam_end_tails]
    mu_tails = [("fork", p) for p in plan.mu_fork_tails]
    mu_tails += [("end", v) for v in plan.mu_end_tails]
    pre = []
    if not plan.e1_incoming:
        star = [("fork", p) for p in consts.star_oo]
        star += [("end", 2 * h) for h in consts.star_two_o + consts.star_two_e]
        for item in star:
            lam_tails.remove(item)
            pre.append(item)
    if g > 0 and not plan.mu_fork_tails:
        raise ConstructionFailureError("no mu fork tail to carry the genus cycles")

    def make_tail(item, side, cycles=0):
        kind, value = item
        if kind == "fork":
            flow = 2 * value if side == "lam" else -2 * value
            return flow, (
                lambda gbx, v, p=value, s=side, c=cycles: _attach_fork_tail(gbx, v, p, s, c)
            )
        if side == "lam":
            return value, lambda gbx, v, w=value: gbx.edge(gbx.leaf("L"), v, w)
        return -value, lambda gbx, v, w=value: gbx.edge(v, gbx.leaf("R"), w)

    last_error = None
    for order_mask in range(1 << max(0, n - 2)):
        gb = _GraphBuilder()
        lower_end: dict[int, int] = {}  # connector m endpoint on string m
        upper_end: dict[int, int] = {}  # connector m endpoint on string m+1
        try:
            att = [make_tail(t, "lam") for t in pre]
            att.append((plan.nets[0], lambda gbx, v: lower_end.__setitem__(0, v)))
            att += [make_tail(t, "lam") for t in lam_tails]
            first_mu_fork = True
            for t in mu_tails:
                if t[0] == "fork" and first_mu_fork:
                    att.append(make_tail(t, "mu", cycles=g))
                    first_mu_fork = False
                else:
                    att.append(make_tail(t, "mu"))
            _build_string(gb, _string_ends(*plan.strings[0]), att)

            for i in range(1, n):
                slots = [
                    (-plan.nets[i - 1], lambda gbx, v, m=i - 1: upper_end.__setitem__(m, v))
                ]
                if i < n - 1:
                    slots.append(
                        (plan.nets[i], lambda gbx, v, m=i: lower_end.__setitem__(m, v))
                    )
                    if order_mask >> (i - 1) & 1:
                        slots.reverse()
                _build_string(gb, _string_ends(*plan.strings[i]), slots)

            for m in range(n - 1):
                net = plan.nets[m]
                if net > 0:
                    gb.edge(upper_end[m], lower_end[m], net)
                else:
                    gb.edge(lower_end[m], upper_end[m], -net)
        except ConstructionFailureError as exc:
            last_error = exc
            continue

        connector_nodes = set(lower_end.values()) | set(upper_end.values())
        cover = _finalize(gb, r, connector_nodes)
        if cover is None:
            last_error = ConstructionFailureError(
                "attachment order misses the position bound"
            )
            continue
        got = classify_cover(cover)
        if got.kind != EFFECTIVE_NONZIGZAG:
            # e.g. a connector came out mixed through/bend on this arrangement
            last_error = ConstructionFailureError(
                f"constructed cover classifies as {got.kind}"
            )
            continue
        return cover
    raise ConstructionFailureError(
        f"no attachment order satisfies every bullet ({last_error})"
    )


def _finalize(gb, r, connector_nodes):
    """Place vertices: ancestors of connector endpoints first, so connector
    positions stay <= ceil(r/2); None when that set is already too large."""
    if gb.n_nodes != r:
        raise ConstructionFailureError(
            f"constructed {gb.n_nodes} vertices, expected r={r}"
        )
    pred = {v: [] for v in range(r)}
    for u, v, _ in gb.edges:
        if isinstance(u, int) and isinstance(v, int):
            pred[v].append(u)
    need = set()
    stack = list(connector_nodes)
    while stack:
        v = stack.pop()
        if v in need:
            continue
        need.add(v)
        stack.extend(pred[v])
    if len(need) > (r + 1) // 2:
        return None

    position = {}

    def place(pool):
        remaining = set(pool)
        while remaining:
            ready = sorted(
                v for v in remaining if all(p in position for p in pred[v])
            )
            if not ready:
                raise ConstructionFailureError("orientation admits no total order")
            v = ready[0]
            position[v] = len(position) + 1
            remaining.remove(v)

    place(need)
    place(set(range(r)) - need)
    edges = []
    for u, v, w in gb.edges:
        src = 0 if not isinstance(u, int) else position[u]
        dst = r + 1 if not isinstance(v, int) else position[v]
        edges.append((src, dst, w))
    return TropicalCover.build(r, edges)


# -- asymptotic sweep --------------------------------------------------------------


@dataclass
class SweepRow:
    m: int
    r: int
    zigzag: int | None = None
    effective_nonzigzag: int | None = None
    effective: int | None = None
    h_complex: Fraction | None = None
    h_real: dict | None = None
    chain_ok: bool | None = None
    parity_ok: bool | None = None
    log_ratio_effective: float | None = None
    log_ratio_h_complex: float | None = None
    error: str | None = None


def _log_ratio(value, m):
    if m < 2 or value is None:
        return None
    v = Fraction(value)
    if v <= 0:
        return None
    return (math.log(v.numerator) - math.log(v.denominator)) / (2 * m * math.log(m))


def sweep(g: int, lam, mu, m_max: int, s_policy: str = "all",
          budget: Budget | None = None, cache=None) -> list[SweepRow]:
    """Rows m = 0..m_max for ((lam,1^m), (mu,1^m)); exact counts, float ratios.

    Every row is evaluated through the tropical route. A row whose budget is
    exhausted is emitted with its error marked rather than dropped.
    """
    lam, mu = as_partition(lam), as_partition(mu)
    rows = []
    for m in range(m_max + 1):
        lam_m, mu_m = extend_with_ones(lam, m), extend_with_ones(mu, m)
        r = branch_count(g, lam_m, mu_m)
        key = (
            f"sweep|g={g}|lam={lam}|mu={mu}|m={m}|s={s_policy}"
        )
        if cache is not None:
            hit = cache.get(key)
            if hit is not None:
                rows.append(_row_from_json(hit))
                continue
        row = SweepRow(m=m, r=r)
        try:
            covers = enumerate_covers(g, lam_m, mu_m, budget)
            row.zigzag = sum(1 for c in covers if classify_cover(c).kind == ZIGZAG)
            row.effective_nonzigzag = 2 * sum(
                1 for c in covers if classify_cover(c).kind == EFFECTIVE_NONZIGZAG
            )
            row.effective = row.zigzag + row.effective_nonzigzag
            row.h_complex = sum((mult_complex(c) for c in covers), Fraction(0))
            if s_policy != "none":
                table = splitting_table(covers)
                s_values = range(r + 1) if s_policy == "all" else (0, r)
                row.h_real = {
                    s: table.get(frozenset(range(1, s + 1)), Fraction(0))
                    for s in s_values
                }
            if r > 0 and not in_excluded_family(lam_m, mu_m) and row.h_real:
                hrs = list(row.h_real.values())
                row.chain_ok = (
                    row.zigzag <= row.effective
                    and all(row.effective <= v for v in hrs)
                    and all(v <= row.h_complex for v in hrs)
                )
                ints = [Fraction(v) for v in (row.h_complex, *hrs)]
                row.parity_ok = all(v.denominator == 1 for v in ints) and len(
                    {int(v) % 2 for v in ints} | {row.zigzag % 2, row.effective % 2}
                ) == 1
            row.log_ratio_effective = _log_ratio(row.effective, m)
            row.log_ratio_h_complex = _log_ratio(row.h_complex, m)
        except Exception as exc:  # budget or hypothesis; report, never truncate
            row.error = f"{type(exc).__name__}: {exc}"
        rows.append(row)
        if cache is not None and row.error is None:
            cache.put(key, _row_to_json(row))
    return rows


def _fmt_fraction(v):
    if v is None:
        return ""
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def _row_to_json(row: SweepRow) -> dict:
    return {
        "m": row.m,
        "r": row.r,
        "Z": row.zigzag,
        "Zprime": row.effective_nonzigzag,
        "E": row.effective,
        "H_complex": _fmt_fraction(row.h_complex),
        "H_real": {str(s): _fmt_fraction(v) for s, v in (row.h_real or {}).items()},
        "chain_ok": row.chain_ok,
        "parity_ok": row.parity_ok,
        "log_ratio_E": row.log_ratio_effective,
        "log_ratio_HC": row.log_ratio_h_complex,
        "error": row.error,
    }


def _parse_fraction(text):
    if text in ("", None):
        return None
    if "/" in text:
        a, b = text.split("/")
        return Fraction(int(a), int(b))
    return Fraction(int(text))


def _row_from_json(d: dict) -> SweepRow:
    return SweepRow(
        m=d["m"],
        r=d["r"],
        zigzag=d["Z"],
        effective_nonzigzag=d["Zprime"],
        effective=d["E"],
        h_complex=_parse_fraction(d["H_complex"]),
        h_real={int(s): _parse_fraction(v) for s, v in (d["H_real"] or {}).items()} or None,
        chain_ok=d["chain_ok"],
        parity_ok=d["parity_ok"],
        log_ratio_effective=d["log_ratio_E"],
        log_ratio_h_complex=d["log_ratio_HC"],
        error=d["error"],
    )


def sweep_to_csv(rows: list[SweepRow]) -> str:
    """CSV text: m, Z, Zprime, E, H_complex, H_real_s0.., log ratios, chain."""
    max_r = max((row.r for row in rows), default=0)
    header = ["m", "Z", "Zprime", "E", "H_complex"]
    header += [f"H_real_s{s}" for s in range(max_r + 1)]
    header += ["log_ratio_E", "log_ratio_HC", "chain"]
    lines = [",".join(header)]
    for row in rows:
        cells = [str(row.m)]
        cells += ["" if v is None else str(v) for v in (row.zigzag, row.effective_nonzigzag, row.effective)]
        cells.append(_fmt_fraction(row.h_complex))
        for s in range(max_r + 1):
            v = (row.h_real or {}).get(s)
            cells.append(_fmt_fraction(v))
        for v in (row.log_ratio_effective, row.log_ratio_h_complex):
            cells.append("" if v is None else repr(v))
        if row.error:
            cells.append(f"ERROR:{row.error.split(':')[0]}")
        elif row.chain_ok is None:
            cells.append("N/A")
        else:
            cells.append("OK" if row.chain_ok else "FAIL")
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"
