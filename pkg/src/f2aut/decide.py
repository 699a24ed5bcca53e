"""The three decision procedures built on bounded chain enumeration.

Positivity asks whether some automorphism maps a word onto one with no
negative letters; bounded translation equivalence (BTE) asks whether the
cyclic lengths of two words stay within a common ratio band under every
automorphism; the fixed-point decision asks whether a finitely generated
subgroup is exactly the fixed set of some automorphism from the bounded
family it searches.

All three walk the same chain tree. Witnesses are deterministic: the
first hit in the canonical enumeration order wins, and parallel runs
reduce candidates by rank so they report the same thing as a sequential
run.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Set, Tuple

from . import kernel
from .autos import ALL_W1, Automorphism, compose, inverse, named
from .chains import (
    Chain,
    ChainVisit,
    STOP,
    apply_chain,
    chain_count,
    enumerate_chains,
    power_lengths,
)
from .subgroups import Subgroup, subgroup_norm
from .words import CyclicWord, Word, cyclic_reduce

DEFAULT_VERIFICATION_DEPTH = 8
DEFAULT_DELTA_STEP_CAP = 64


class ContractViolationError(RuntimeError):
    """A bounds query was made for a pair that is not equivalent."""


# Letter permutation tables of the 8 W1 maps, aligned with ALL_W1.
_W1_PERMS: Tuple[Tuple[int, int, int, int], ...] = tuple(
    (
        f.image_of_a.data[0],
        f.image_of_a.data[0] ^ 1,
        f.image_of_b.data[0],
        f.image_of_b.data[0] ^ 1,
    )
    for f in ALL_W1
)

# The conjugating maps delta1..delta4 send w to g^-1 w g for these g.
_DELTA_CONJUGATORS = (2, 3, 0, 1)
_DELTA_NAMES = ("delta1", "delta2", "delta3", "delta4")

_PARALLEL_PREFIX_DEPTH = 2


class PositivityWitness:
    __slots__ = ("chain", "w1_map", "positive_image")

    def __init__(self, chain: Chain, w1_map: Automorphism, positive_image: CyclicWord):
        self.chain = chain
        self.w1_map = w1_map
        self.positive_image = positive_image


class PositivityReport:
    __slots__ = ("answer", "witness", "chains_examined")

    def __init__(self, answer: bool, witness: Optional[PositivityWitness], chains_examined: int):
        self.answer = answer
        self.witness = witness
        self.chains_examined = chains_examined


class BteCounterexample:
    __slots__ = ("chain", "step", "k", "u_lengths", "v_lengths")

    def __init__(self, chain, step, k, u_lengths, v_lengths):
        self.chain = chain
        self.step = step
        self.k = k
        self.u_lengths = u_lengths
        self.v_lengths = v_lengths


class BteReport:
    __slots__ = ("answer", "failing_condition", "bounds", "delta_set_size", "chains_examined")

    def __init__(self, answer, failing_condition, bounds, delta_set_size, chains_examined):
        self.answer = answer
        self.failing_condition = failing_condition
        self.bounds = bounds
        self.delta_set_size = delta_set_size
        self.chains_examined = chains_examined


class FixWitness:
    __slots__ = ("w1_map", "delta_composition", "chain")

    def __init__(self, w1_map: Automorphism, delta_composition: Tuple[str, ...], chain: Chain):
        self.w1_map = w1_map
        self.delta_composition = delta_composition
        self.chain = chain


class FixReport:
    __slots__ = ("answer", "witness", "verification_depth", "escaped_fixed_word", "chains_examined")

    def __init__(self, answer, witness, verification_depth, escaped_fixed_word, chains_examined):
        self.answer = answer
        self.witness = witness
        self.verification_depth = verification_depth
        self.escaped_fixed_word = escaped_fixed_word
        self.chains_examined = chains_examined


def _subtree_prefixes(polarity: str) -> Tuple[Tuple[str, ...], ...]:
    names = ("sigma", "tau") if polarity == "C1" else ("sigma_inv", "tau_inv")
    out = []
    for x in names:
        for y in names:
            out.append((x, y))
    return tuple(out)


# --- positivity -----------------------------------------------------------


def _positive_w1_index(image_data: bytes) -> Optional[int]:
    """Index of the first letter permutation making the image positive."""
    present = set(image_data)
    if (0 in present and 1 in present) or (2 in present and 3 in present):
        return None
    for bi, perm in enumerate(_W1_PERMS):
        if all(perm[c] & 1 == 0 for c in present):
            return bi
    return None


def _positivity_hit(chain: Chain, image: CyclicWord) -> Optional[PositivityWitness]:
    bi = _positive_w1_index(image.data)
    if bi is None:
        return None
    perm = _W1_PERMS[bi]
    mapped = bytes(perm[c] for c in image.data)
    return PositivityWitness(chain, ALL_W1[bi], CyclicWord(kernel.least_rotation(mapped)))


def potentially_positive(u: Word, max_chain_len: Optional[int] = None, workers: int = 1) -> PositivityReport:
    """Search both chain polarities for a map onto a positive cyclic word.

    The bound defaults to 2 * cyclic length + 3. The witness is the first
    hit in enumeration order: chains in shortlex order (the first polarity
    before the second, whose identity chain is skipped as a duplicate),
    then the first of the 8 letter permutations that works.
    """
    ucyc = cyclic_reduce(u)[0]
    L = 2 * len(ucyc) + 3 if max_chain_len is None else max_chain_len
    if workers > 1:
        return _positivity_parallel(ucyc, L, workers)

    total = 0
    for polarity, include_self in (("C1", True), ("C2", False)):
        found: List[PositivityWitness] = []

        def visitor(v: ChainVisit):
            hit = _positivity_hit(v.chain, v.images[0])
            if hit is not None:
                found.append(hit)
                return STOP
            return None

        summary = enumerate_chains(polarity, L, [ucyc], visitor, include_self=include_self)
        total += summary.visited
        if found:
            return PositivityReport(True, found[0], total)
    return PositivityReport(False, None, total)


def _positivity_scan_subtree(polarity, L, ucyc, prefix, include_self=True):
    found: List[Tuple[int, PositivityWitness]] = []

    def visitor(v: ChainVisit):
        hit = _positivity_hit(v.chain, v.images[0])
        if hit is not None:
            found.append((v.chain.rank(), hit))
            return STOP
        return None

    enumerate_chains(polarity, L, [ucyc], visitor, prefix=prefix, include_self=include_self)
    return found[0] if found else None


def _positivity_parallel(ucyc: CyclicWord, L: int, workers: int) -> PositivityReport:
    examined_before = 0
    with ThreadPoolExecutor(max_workers=workers) as pool:
        for polarity, include_self in (("C1", True), ("C2", False)):
            polarity_total = chain_count(L) - (0 if include_self else 1)
            d = _PARALLEL_PREFIX_DEPTH
            if L < d:
                # tree too shallow to split; scan it directly
                hit = _positivity_scan_subtree(polarity, L, ucyc, (), include_self)
                if hit is not None:
                    rank, wit = hit
                    count = rank - (0 if include_self else 1)
                    return PositivityReport(True, wit, examined_before + count)
                examined_before += polarity_total
                continue
            # short chains (length < d) first: their ranks precede every subtree
            short_hit: Optional[Tuple[int, PositivityWitness]] = None
            found: List[PositivityWitness] = []

            def short_visitor(v: ChainVisit):
                hit = _positivity_hit(v.chain, v.images[0])
                if hit is not None:
                    found.append(hit)
                    return STOP
                return None

            short = enumerate_chains(polarity, d - 1, [ucyc], short_visitor, include_self=include_self)
            if found:
                short_rank = short.visited + (0 if include_self else 1)
                short_hit = (short_rank, found[0])
            if short_hit is not None:
                rank, wit = short_hit
                count = rank - (0 if include_self else 1)
                return PositivityReport(True, wit, examined_before + count)
            jobs = [
                pool.submit(_positivity_scan_subtree, polarity, L, ucyc, pfx)
                for pfx in _subtree_prefixes(polarity)
            ]
            hits = [j.result() for j in jobs]
            best = min((h for h in hits if h is not None), default=None, key=lambda h: h[0])
            if best is not None:
                rank, wit = best
                count = rank - (0 if include_self else 1)
                return PositivityReport(True, wit, examined_before + count)
            examined_before += polarity_total
    return PositivityReport(False, None, examined_before)


# --- bounded translation equivalence --------------------------------------


def _bte_steps(polarity: str) -> Tuple[str, str]:
    return ("sigma", "tau") if polarity == "C1" else ("sigma_inv", "tau_inv")


def _bte_check_visit(v: ChainVisit, polarity: str, k: int, ratios: Set[Fraction]):
    """Check both stabilization biconditionals at one chain.

    Returns None when the chain passes (after adding its ratio and step
    ratios to the running set), or the violating (step, u_lengths,
    v_lengths) triple.
    """
    img_u, img_v = v.images
    ratios.add(Fraction(len(img_u), len(img_v)))
    for step in _bte_steps(polarity):
        pu = power_lengths(img_u, step, k + 1)
        pv = power_lengths(img_v, step, k + 1)
        if (pu[k + 1] == pu[k]) != (pv[k + 1] == pv[k]):
            return step, (pu[k], pu[k + 1]), (pv[k], pv[k + 1])
        ratios.add(Fraction(max(1, pu[1] - pu[0]), max(1, pv[1] - pv[0])))
    return None


def bounded_translation_equivalent(
    u: Word, v: Word, max_chain_len: Optional[int] = None, workers: int = 1
) -> BteReport:
    """Decide whether the cyclic lengths of the two words stay in a band.

    Internally the longer word is tested first; a counterexample or the
    bounds are reported in the caller's orientation. A true answer comes
    with exact rational (min, max) bounds on the length ratio over all
    automorphisms, read off the collected ratio set.
    """
    ucyc = cyclic_reduce(u)[0]
    vcyc = cyclic_reduce(v)[0]
    if len(ucyc) == 0 or len(vcyc) == 0:
        raise ValueError("both inputs must have nonzero cyclic length")
    swapped = len(vcyc) > len(ucyc)
    U, V = (vcyc, ucyc) if swapped else (ucyc, vcyc)
    k = len(U) + 1
    L = 2 * len(U) + 5 if max_chain_len is None else max_chain_len

    if workers > 1:
        failing, ratios, examined = _bte_parallel(U, V, k, L, workers)
    else:
        failing, ratios, examined = _bte_sequential(U, V, k, L)

    if failing is not None:
        chain, step, u_lengths, v_lengths = failing
        if swapped:
            u_lengths, v_lengths = v_lengths, u_lengths
        return BteReport(
            False,
            BteCounterexample(chain, step, k, u_lengths, v_lengths),
            None,
            0,
            examined,
        )
    lo, hi = min(ratios), max(ratios)
    if swapped:
        lo, hi = 1 / hi, 1 / lo
    return BteReport(True, None, (lo, hi), len(ratios), examined)


def _bte_sequential(U, V, k, L):
    ratios: Set[Fraction] = set()
    failing: List[tuple] = []
    examined = 0
    for polarity in ("C1", "C2"):

        def visitor(v: ChainVisit):
            bad = _bte_check_visit(v, polarity, k, ratios)
            if bad is not None:
                failing.append((v.chain,) + bad)
                return STOP
            return None

        summary = enumerate_chains(polarity, L, [U, V], visitor)
        examined += summary.visited
        if failing:
            return failing[0], ratios, examined
    return None, ratios, examined


def _bte_scan_subtree(U, V, k, L, polarity, prefix):
    ratios: Set[Fraction] = set()
    failing: List[tuple] = []

    def visitor(v: ChainVisit):
        bad = _bte_check_visit(v, polarity, k, ratios)
        if bad is not None:
            failing.append((v.chain.rank(), (v.chain,) + bad))
            return STOP
        return None

    enumerate_chains(polarity, L, [U, V], visitor, prefix=prefix)
    return (failing[0] if failing else None), ratios


def _bte_parallel(U, V, k, L, workers):
    ratios: Set[Fraction] = set()
    examined_before = 0
    with ThreadPoolExecutor(max_workers=workers) as pool:
        for polarity in ("C1", "C2"):
            d = _PARALLEL_PREFIX_DEPTH
            if L < d:
                hit, rset = _bte_scan_subtree(U, V, k, L, polarity, ())
                ratios |= rset
                if hit is not None:
                    return hit[1], ratios, examined_before + hit[0]
                examined_before += chain_count(L)
                continue
            short_fail: List[tuple] = []

            def short_visitor(v: ChainVisit):
                bad = _bte_check_visit(v, polarity, k, ratios)
                if bad is not None:
                    short_fail.append((v.chain.rank(), (v.chain,) + bad))
                    return STOP
                return None

            enumerate_chains(polarity, d - 1, [U, V], short_visitor)
            if short_fail:
                rank, packed = short_fail[0]
                return packed, ratios, examined_before + rank
            jobs = [
                pool.submit(_bte_scan_subtree, U, V, k, L, polarity, pfx)
                for pfx in _subtree_prefixes(polarity)
            ]
            results = [j.result() for j in jobs]
            for _, rset in results:
                ratios |= rset
            best = min((h for h, _ in results if h is not None), default=None, key=lambda h: h[0])
            if best is not None:
                return best[1], ratios, examined_before + best[0]
            examined_before += chain_count(L)
    return None, ratios, examined_before


def compute_delta_bounds(u: Word, v: Word) -> Tuple[Fraction, Fraction]:
    """Exact (min, max) ratio bounds; only valid for an equivalent pair."""
    report = bounded_translation_equivalent(u, v)
    if not report.answer:
        raise ContractViolationError("bounds requested for a pair that is not equivalent")
    return report.bounds


# --- fixed point groups ----------------------------------------------------


class _BfsOutcome:
    __slots__ = ("truncated", "found", "parent")

    def __init__(self, truncated, found, parent):
        self.truncated = truncated
        self.found = found  # [(discovery index, state)] in discovery order
        self.parent = parent  # state -> (previous state, move index) or None


def _conj(component: bytes, g: int) -> bytes:
    return kernel.free_reduce(bytes((g ^ 1,)) + component + bytes((g,)))


def _delta_bfs(start, target_states, step_cap, word_cap) -> _BfsOutcome:
    """Breadth-first closure of the simultaneous-conjugation moves.

    States are tuples of words; the four moves conjugate every component
    by one letter. States whose components outgrow word_cap are dropped
    silently (they cannot shrink back below the shortest conjugate), and a
    nonempty frontier at step_cap marks the outcome truncated.
    """
    parent = {start: None}
    order = [start]
    found = []
    if start in target_states:
        found.append((0, start))
    frontier = [start]
    level = 0
    while frontier and level < step_cap:
        nxt = []
        for st in frontier:
            for mi, g in enumerate(_DELTA_CONJUGATORS):
                child = tuple(_conj(c, g) for c in st)
                if child in parent:
                    continue
                if word_cap is not None and any(len(c) > word_cap for c in child):
                    continue
                parent[child] = (st, mi)
                if child in target_states:
                    found.append((len(order), child))
                order.append(child)
                nxt.append(child)
        frontier = nxt
        level += 1
    return _BfsOutcome(bool(frontier), found, parent)


def _bfs_path(outcome: _BfsOutcome, state) -> Tuple[str, ...]:
    names = []
    cur = state
    while outcome.parent[cur] is not None:
        prev, mi = outcome.parent[cur]
        names.append(_DELTA_NAMES[mi])
        cur = prev
    names.reverse()
    return tuple(names)


def _reduced_words_up_to(max_len: int) -> List[bytes]:
    """All freely reduced words of length <= max_len in shortlex order."""
    out = [b""]
    frontier = [b""]
    for _ in range(max_len):
        nxt = []
        for w in frontier:
            last = w[-1] if w else None
            for c in range(4):
                if last is None or c != last ^ 1:
                    nw = w + bytes((c,))
                    nxt.append(nw)
        out.extend(nxt)
        frontier = nxt
    return out


class _FixChainRecord:
    __slots__ = ("order_key", "truncated", "candidates")

    def __init__(self, order_key, truncated, candidates):
        self.order_key = order_key
        self.truncated = truncated
        # candidates: [(chain, disc, beta index, delta names, phi, escape or None)]
        self.candidates = candidates


def _candidate_automorphism(beta_index: int, delta_names, chain: Chain) -> Automorphism:
    g = None
    for s in chain.steps:
        g = named(s) if g is None else compose(named(s), g)
    for nm in delta_names:
        g = named(nm) if g is None else compose(named(nm), g)
    beta = ALL_W1[beta_index]
    return beta if g is None else compose(beta, g)


def _verify_escape(phi: Automorphism, H: Subgroup, words: Sequence[bytes]) -> Optional[bytes]:
    """First canonical word fixed by phi but outside H, if any."""
    tab = (
        phi.image_of_a.data,
        kernel.invert_bytes(phi.image_of_a.data),
        phi.image_of_b.data,
        kernel.invert_bytes(phi.image_of_b.data),
    )
    trace = H.folded_graph.trace
    for wb in words:
        if kernel.apply_mapped(wb, *tab) == wb and trace(wb) != 0:
            return wb
    return None


def _fix_scan(
    H: Subgroup,
    polarity: str,
    L: int,
    include_self: bool,
    prefix,
    target_canons: Set[tuple],
    target_states: Dict[tuple, Tuple[int, ...]],
    step_cap: int,
    word_cap: int,
    bfs_cache: Dict[tuple, _BfsOutcome],
    verify_words: Sequence[bytes],
) -> Tuple[List[_FixChainRecord], int]:
    """Walk one polarity (or one subtree) and collect per-chain records.

    Candidates are verified eagerly so that sequential and partitioned
    runs agree by construction.
    """
    records: List[_FixChainRecord] = []
    gen_cyc = [cyclic_reduce(g)[0] for g in H.generators]
    polarity_index = 0 if polarity == "C1" else 1

    def visitor(v: ChainVisit):
        canon = tuple(img.data for img in v.images)
        if canon not in target_canons:
            return None
        start = tuple(apply_chain(v.chain, g).data for g in H.generators)
        outcome = bfs_cache.get(start)
        if outcome is None:
            outcome = _delta_bfs(start, target_states, step_cap, word_cap)
            bfs_cache[start] = outcome
        candidates = []
        for disc, state in outcome.found:
            path = _bfs_path(outcome, state)
            for bi in target_states[state]:
                phi = _candidate_automorphism(bi, path, v.chain)
                escape = _verify_escape(phi, H, verify_words)
                candidates.append((disc, bi, path, phi, escape))
        if outcome.truncated or candidates:
            records.append(
                _FixChainRecord((polarity_index, v.chain.rank()), outcome.truncated, [(v.chain,) + c for c in candidates])
            )
        return None

    summary = enumerate_chains(polarity, L, gen_cyc, visitor, prefix=prefix, include_self=include_self)
    return records, summary.visited


def fixed_point_group(
    H: Subgroup,
    verification_depth: int = DEFAULT_VERIFICATION_DEPTH,
    delta_step_cap: int = DEFAULT_DELTA_STEP_CAP,
    word_length_cap: Optional[int] = None,
    max_chain_len: Optional[int] = None,
    workers: int = 1,
) -> FixReport:
    """Search for an automorphism whose fixed set is exactly H.

    Candidates have the shape (letter permutation) after (conjugation
    sequence) after (chain); a candidate counts only if it fixes every
    generator verbatim, and a yes additionally requires that no reduced
    word up to verification_depth is fixed without lying in H. Any
    conjugation search cut off by the step cap poisons the whole answer
    to inconclusive; a no needs every candidate refuted with all searches
    run to exhaustion.
    """
    norm = subgroup_norm(H)
    L = 4 * norm + 4 if max_chain_len is None else max_chain_len
    word_cap = 4 * (norm + 4) if word_length_cap is None else word_length_cap
    exhaustive_steps = (2 ** (4 * norm + 4) + 1) * norm
    step_cap = min(delta_step_cap, exhaustive_steps) if norm > 0 else delta_step_cap

    # Targets: for each of the 8 letter permutations beta, the tuple of
    # beta^-1(generator) words; keyed by state with the beta indices that
    # share it. Canonical cyclic forms drive the per-chain precheck.
    target_states: Dict[tuple, List[int]] = {}
    target_canons: Set[tuple] = set()
    for bi, beta in enumerate(ALL_W1):
        binv = inverse(beta)
        tab = (
            binv.image_of_a.data,
            kernel.invert_bytes(binv.image_of_a.data),
            binv.image_of_b.data,
            kernel.invert_bytes(binv.image_of_b.data),
        )
        state = tuple(kernel.apply_mapped(g.data, *tab) for g in H.generators)
        target_states.setdefault(state, []).append(bi)
        target_canons.add(
            tuple(
                kernel.least_rotation(kernel.cyclic_trim(comp)[0]) for comp in state
            )
        )
    target_states = {k: tuple(v) for k, v in target_states.items()}

    verify_words = _reduced_words_up_to(verification_depth)
    bfs_cache: Dict[tuple, _BfsOutcome] = {}

    records: List[_FixChainRecord] = []
    examined = 0
    if workers > 1 and L >= _PARALLEL_PREFIX_DEPTH:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for polarity, include_self in (("C1", True), ("C2", False)):
                d = _PARALLEL_PREFIX_DEPTH
                recs, n = _fix_scan(
                    H, polarity, d - 1, include_self, (), target_canons,
                    target_states, step_cap, word_cap, bfs_cache, verify_words,
                )
                records.extend(recs)
                examined += n
                jobs = [
                    pool.submit(
                        _fix_scan, H, polarity, L, True, pfx, target_canons,
                        target_states, step_cap, word_cap, bfs_cache, verify_words,
                    )
                    for pfx in _subtree_prefixes(polarity)
                ]
                for j in jobs:
                    recs, n = j.result()
                    records.extend(recs)
                    examined += n
    else:
        for polarity, include_self in (("C1", True), ("C2", False)):
            recs, n = _fix_scan(
                H, polarity, L, include_self, (), target_canons,
                target_states, step_cap, word_cap, bfs_cache, verify_words,
            )
            records.extend(recs)
            examined += n

    records.sort(key=lambda r: r.order_key)
    truncated_any = any(r.truncated for r in records)
    all_candidates = [c for r in records for c in r.candidates]

    if truncated_any:
        return FixReport("inconclusive", None, verification_depth, None, examined)

    for chain, disc, bi, path, phi, escape in all_candidates:
        if escape is None:
            return FixReport(
                "yes",
                FixWitness(ALL_W1[bi], path, chain),
                verification_depth,
                None,
                examined,
            )

    escaped = None
    if all_candidates:
        phis = [c[4] for c in all_candidates]
        tabs = [
            (
                p.image_of_a.data,
                kernel.invert_bytes(p.image_of_a.data),
                p.image_of_b.data,
                kernel.invert_bytes(p.image_of_b.data),
            )
            for p in phis
        ]
        trace = H.folded_graph.trace
        for wb in verify_words:
            if trace(wb) == 0:
                continue
            if all(kernel.apply_mapped(wb, *t) == wb for t in tabs):
                escaped = Word(wb)
                break
    return FixReport("no", None, verification_depth, escaped, examined)
