"""Exhaustive verification of the direct-extension property over a catalog.

An extension instance packages the premises: an internal direct splitting
G = H·K, a normal H0 with H0 ≅ H, and G/H0 ≅ K.  The headline check asks,
for every instance over every catalog group, whether H0 has a normal direct
complement; a violation would be a falsification artifact and is serialized
in full.
"""

from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass
from multiprocessing import get_context

from .catalog import CatalogEntry, group_to_json_dict
from .core import Cyclic, Group, Product, Semidirect, construct
from .errors import NotPrime, OrderBound
from .iso import Iso, IsoCache, find_isomorphism
from .subgroups import (
    DEFAULT_LATTICE_CAP,
    QuotientMap,
    Subgroup,
    all_subgroups,
    center,
    center_of,
    commutator,
    derived_subgroup,
    is_normal_bits,
    is_subgroup_bits,
    normal_subgroups,
    project_bits,
    quotient,
    set_product,
    subgroup_as_group,
    trivial_subgroup,
)
from .decomposition import (
    CoprimeViolation,
    _factor_projection,
    all_direct_splittings,
    combine_coprime_factors,
    direct_complements,
    is_coprime,
    is_directly_decomposable,
    is_internal_direct,
    remak_decomposition,
)
from .subgroups import _is_prime


@dataclass(frozen=True)
class ExtensionInstance:
    """Premises of the direct-extension check for one (splitting, H0) choice."""

    parent: Group
    h0: Subgroup
    h: Subgroup
    k: Subgroup
    iso_h: Iso  # H0 (extracted) -> H (extracted)
    iso_k: Iso  # G/H0 -> K (extracted)


@dataclass(frozen=True)
class TheoremResult:
    instance: ExtensionInstance
    witness: Subgroup | None

    @property
    def ok(self) -> bool:
        return self.witness is not None


def _quotient_cached(group: Group, normal: Subgroup) -> QuotientMap:
    key = ("quotient", normal.bits)
    cached = group._cache.get(key)
    if cached is None:
        cached = quotient(group, normal)
        group._cache[key] = cached
    return cached


def extension_instances(group: Group, *, cap: int = DEFAULT_LATTICE_CAP,
                        cache: IsoCache | None = None) -> list[ExtensionInstance]:
    """Every way the premises hold: both orientations of every splitting
    crossed with every normal subgroup, kept when both witnesses exist."""
    cache = cache or IsoCache()
    normals = normal_subgroups(group, cap=cap)
    seen: set[tuple[int, int, int]] = set()
    out = []
    for pair in all_direct_splittings(group, cap=cap):
        for h, k in (pair, pair[::-1]):
            h_group, _ = subgroup_as_group(h)
            k_group, _ = subgroup_as_group(k)
            for h0 in normals:
                if h0.order != h.order:
                    continue
                key = (h0.bits, h.bits, k.bits)
                if key in seen:
                    continue
                seen.add(key)
                h0_group, _ = subgroup_as_group(h0)
                map_h = cache.iso_map(h0_group, h_group)
                if map_h is None:
                    continue
                qm = _quotient_cached(group, h0)
                map_k = cache.iso_map(qm.target, k_group)
                if map_k is None:
                    continue
                out.append(
                    ExtensionInstance(
                        group, h0, h, k,
                        Iso(h0_group, h_group, map_h),
                        Iso(qm.target, k_group, map_k),
                    )
                )
    return out


def check_direct_extension(group: Group, instance: ExtensionInstance, *,
                           cap: int = DEFAULT_LATTICE_CAP) -> TheoremResult:
    """Find a normal direct complement for the instance's H0.

    The witness is the canonically first complement; absence marks the
    instance as a violation (which, for finite groups, must never happen).
    """
    comps = direct_complements(group, instance.h0, cap=cap)
    return TheoremResult(instance, comps[0] if comps else None)


# ---------------------------------------------------------------------------
# property suites

def _derived_within(group: Group, sub: Subgroup) -> Subgroup:
    key = ("derived_within", sub.bits)
    cached = group._cache.get(key)
    if cached is None:
        cached = commutator(group, sub, sub)
        group._cache[key] = cached
    return cached


def _center_within(group: Group, sub: Subgroup) -> Subgroup:
    key = ("center_within", sub.bits)
    cached = group._cache.get(key)
    if cached is None:
        cached = center_of(group, sub)
        group._cache[key] = cached
    return cached


def property_suite(group: Group, *, cap: int = DEFAULT_LATTICE_CAP,
                   cache: IsoCache | None = None,
                   instances: list[ExtensionInstance] | None = None) -> dict[str, dict]:
    """Run every decomposition identity and the premise-only lemma identities.

    Returns {check name: {"pass": bool, "failures": [witness dicts]}}; the
    failure lists stay empty unless a statement is falsified.
    """
    cache = cache or IsoCache()
    if instances is None:
        instances = extension_instances(group, cap=cap, cache=cache)
    subs = all_subgroups(group, cap=cap)
    normals = normal_subgroups(group, cap=cap)
    splittings = all_direct_splittings(group, cap=cap)
    g_derived = derived_subgroup(group)
    g_center = center(group)
    results: dict[str, dict] = {}

    def record(name: str, failures: list) -> None:
        results[name] = {"pass": not failures, "failures": failures}

    # subgroups of an internal product split along it: L ⊇ H gives L = H·(L∩K)
    failures = []
    for pair in splittings:
        for h, k in (pair, pair[::-1]):
            for l in subs:
                if h.bits & ~l.bits:
                    continue
                lk = Subgroup(group, l.bits & k.bits)
                bits, _ = set_product(group, h, lk)
                if bits != l.bits:
                    failures.append({"h": h.members(), "k": k.members(), "l": l.members()})
    record("prop_2_1", failures)

    # derived group and centre distribute over a splitting
    failures = []
    for h, k in splittings:
        dbits, _ = set_product(group, _derived_within(group, h), _derived_within(group, k))
        zbits, _ = set_product(group, _center_within(group, h), _center_within(group, k))
        if dbits != g_derived.bits or zbits != g_center.bits:
            failures.append({"h": h.members(), "k": k.members()})
    record("prop_2_2", failures)

    factors = [n for n in normals if direct_complements(group, n, cap=cap)]
    factor_groups = {f.bits: subgroup_as_group(f)[0] for f in factors}

    # coprime direct factors meet trivially and combine into a direct factor
    failures = []
    for i, a in enumerate(factors):
        for b in factors[i:]:
            if not is_coprime(factor_groups[a.bits], factor_groups[b.bits],
                              cap=cap, cache=cache):
                continue
            outcome = combine_coprime_factors(group, a, b, cap=cap, cache=cache)
            if isinstance(outcome, CoprimeViolation):
                failures.append({"a": a.members(), "b": b.members(),
                                 "reason": outcome.reason})
    record("prop_2_3", failures)

    # the projection of a factor coprime to B onto C is again a direct factor
    failures = []
    for pair in splittings:
        for b, c in (pair, pair[::-1]):
            proj = None
            for a in factors:
                if not is_coprime(factor_groups[a.bits], factor_groups[b.bits],
                                  cap=cap, cache=cache):
                    continue
                if proj is None:
                    proj = _factor_projection(group, b, c)
                bits = 0
                for m in a.members():
                    bits |= 1 << proj[m]
                image = Subgroup(group, bits)
                if not (is_normal_bits(group, image.bits)
                        and direct_complements(group, image, cap=cap)):
                    failures.append({"a": a.members(), "b": b.members(),
                                     "c": c.members(), "image": image.members()})
    record("cor_2_1", failures)

    # directly decomposable normal subgroups distribute over the
    # indecomposable factors, and the quotient splits along their images
    failures = []
    remak = remak_decomposition(group, cap=cap)
    for d in normals:
        if not is_directly_decomposable(group, d, cap=cap):
            continue
        acc = trivial_subgroup(group)
        for hi in remak.factors:
            bits, _ = set_product(group, acc, Subgroup(group, hi.bits & d.bits))
            acc = Subgroup(group, bits)
        if acc.bits != d.bits:
            failures.append({"d": d.members(), "kind": "factor product"})
            continue
        qm = _quotient_cached(group, d)
        images = []
        for hi in remak.factors:
            bits, _ = set_product(group, hi, d)
            images.append(Subgroup(qm.target, project_bits(qm, bits)))
        if not is_internal_direct(qm.target, images):
            failures.append({"d": d.members(), "kind": "quotient splitting"})
    record("prop_2_4", failures)

    # T normal with T' = T∩G' forces T' directly decomposable
    failures = []
    for t in normals:
        t_derived = _derived_within(group, t)
        if t_derived.bits != t.bits & g_derived.bits:
            continue
        if not is_directly_decomposable(group, t_derived, cap=cap):
            failures.append({"t": t.members(), "t_derived": t_derived.members()})
    record("prop_2_5", failures)

    # premise-only identities, one evaluation per H0 that occurs in an instance
    h0_list: dict[int, Subgroup] = {}
    for inst in instances:
        h0_list.setdefault(inst.h0.bits, inst.h0)
    fail_a, fail_b, fail_c, fail_d = [], [], [], []
    zg_group, zg_members = subgroup_as_group(g_center)
    zg_pos = {m: i for i, m in enumerate(zg_members)}
    for bits in sorted(h0_list):
        h0 = h0_list[bits]
        h0_derived = _derived_within(group, h0)
        if h0_derived.bits != h0.bits & g_derived.bits:
            fail_a.append({"h0": h0.members()})
        found_m = False
        for m in normals:
            inter = m.bits & h0.bits
            if inter != h0_derived.bits:
                continue
            # |M·H0| = |M||H0|/|M∩H0| covers G exactly when it equals |G|
            if m.order * h0.order == group.order * h0_derived.order:
                found_m = True
                break
        if not found_m:
            fail_b.append({"h0": h0.members()})
        h0_center = _center_within(group, h0)
        if h0_center.bits != h0.bits & g_center.bits:
            fail_c.append({"h0": h0.members()})
        if h0_center.bits & ~g_center.bits:
            fail_d.append({"h0": h0.members(), "reason": "Z(H0) not inside Z(G)"})
        else:
            inner = Subgroup(zg_group, 0)
            zbits = 0
            for m in h0_center.members():
                zbits |= 1 << zg_pos[m]
            inner = Subgroup(zg_group, zbits)
            if not direct_complements(zg_group, inner, cap=cap):
                fail_d.append({"h0": h0.members()})
    record("lemma_4_1a", fail_a)
    record("lemma_4_1b", fail_b)
    record("lemma_4_2a", fail_c)
    record("lemma_4_2b", fail_d)
    return results


# ---------------------------------------------------------------------------
# the split / non-split extension pair

@dataclass(frozen=True)
class CounterexampleBundle:
    """One group carrying a split and a non-split extension with equal ends.

    checks map names to True/False, or None when a check was skipped
    because the subgroup scan exceeds the lattice cap.
    """

    p: int
    group: Group
    n_split: Subgroup
    t_split: Subgroup
    n_nonsplit: Subgroup
    checks: dict[str, bool | None]

    @property
    def all_pass(self) -> bool:
        return all(v for v in self.checks.values() if v is not None)


def build_split_counterexample(p: int, *, order_cap: int = 512,
                               lattice_cap: int = DEFAULT_LATTICE_CAP) -> CounterexampleBundle:
    """Build (A ⋉ (B×C)) × D with all four parts cyclic of order p.

    A acts by shearing C along B, so B×C is a split normal subgroup while
    the central C×D admits no complement at all even though both have the
    same kernel and quotient type.
    """
    if not _is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if p ** 4 > order_cap:
        raise OrderBound(p ** 4, order_cap)
    shear = tuple(b * p + (c + b) % p for b in range(p) for c in range(p))
    inner = Semidirect(Product(Cyclic(p), Cyclic(p)), Cyclic(p), ((1, shear),))
    group = construct(Product(inner, Cyclic(p)), name=f"split-counterexample-p{p}")

    def idx(a: int, b: int, c: int, d: int) -> int:
        return ((a * p + b) * p + c) * p + d

    n_split_bits = 0
    t_split_bits = 0
    n_nonsplit_bits = 0
    for x in range(p):
        for y in range(p):
            n_split_bits |= 1 << idx(0, x, y, 0)
            t_split_bits |= 1 << idx(x, 0, 0, y)
            n_nonsplit_bits |= 1 << idx(0, 0, x, y)
    n_split = Subgroup(group, n_split_bits)
    t_split = Subgroup(group, t_split_bits)
    n_nonsplit = Subgroup(group, n_nonsplit_bits)

    cp2 = construct(Product(Cyclic(p), Cyclic(p)))
    checks: dict[str, bool | None] = {}

    bits, _ = set_product(group, t_split, n_split)
    checks["split_has_complement"] = (
        is_normal_bits(group, n_split.bits)
        and is_subgroup_bits(group, t_split.bits)
        and t_split.bits & n_split.bits == 1
        and bits == (1 << group.order) - 1
    )

    checks["nonsplit_kernel_central"] = not (n_nonsplit.bits & ~center(group).bits)

    q_nonsplit = _quotient_cached(group, n_nonsplit)
    checks["nonsplit_quotient_elementary"] = (
        find_isomorphism(q_nonsplit.target, cp2) is not None
    )

    if group.order <= lattice_cap:
        has_complement = False
        for t in all_subgroups(group, cap=lattice_cap):
            if t.bits & n_nonsplit.bits != 1:
                continue
            bits, _ = set_product(group, t, n_nonsplit)
            if bits == (1 << group.order) - 1:
                has_complement = True
                break
        checks["nonsplit_has_no_complement"] = not has_complement
    else:
        checks["nonsplit_has_no_complement"] = None

    elementary4 = construct(
        Product(Product(Cyclic(p), Cyclic(p)), Product(Cyclic(p), Cyclic(p)))
    )
    checks["not_isomorphic_to_elementary"] = find_isomorphism(group, elementary4) is None

    q_split = _quotient_cached(group, n_split)
    checks["kernels_quotients_match"] = (
        find_isomorphism(subgroup_as_group(n_split)[0], cp2) is not None
        and find_isomorphism(q_split.target, cp2) is not None
        and find_isomorphism(subgroup_as_group(n_nonsplit)[0], cp2) is not None
        and find_isomorphism(q_nonsplit.target, cp2) is not None
        and find_isomorphism(group, construct(Product(cp2.recipe, cp2.recipe))) is None
    )
    return CounterexampleBundle(p, group, n_split, t_split, n_nonsplit, checks)


def counterexample_json_dict(bundle: CounterexampleBundle) -> dict:
    return {
        "p": bundle.p,
        "group": group_to_json_dict(bundle.group),
        "n_split": bundle.n_split.members(),
        "t_split": bundle.t_split.members(),
        "n_nonsplit": bundle.n_nonsplit.members(),
        "checks": dict(bundle.checks),
    }


# ---------------------------------------------------------------------------
# catalog-wide verification

@dataclass(frozen=True)
class VerifyConfig:
    max_order: int = 16
    lattice_cap: int = DEFAULT_LATTICE_CAP
    jobs: int = 1
    seed: int = 0


@dataclass
class Report:
    status: str
    config: dict
    summary: dict
    groups: list[dict]

    def json_dict(self, *, include_timings: bool = False) -> dict:
        groups = []
        for g in self.groups:
            g = dict(g)
            if not include_timings:
                g.pop("ms", None)
            groups.append(g)
        return {
            "status": self.status,
            "config": self.config,
            "summary": self.summary,
            "groups": groups,
        }

    def json_bytes(self, *, include_timings: bool = False) -> bytes:
        text = json.dumps(self.json_dict(include_timings=include_timings),
                          sort_keys=True, indent=2)
        return (text + "\n").encode("utf-8")


def _instance_json_dict(inst: ExtensionInstance) -> dict:
    return {
        "h0": inst.h0.members(),
        "h": inst.h.members(),
        "k": inst.k.members(),
        "iso_h": list(inst.iso_h.map),
        "iso_k": list(inst.iso_k.map),
    }


def _verify_one(payload: tuple[str, Group, int]) -> dict:
    name, group, cap = payload
    start = time.perf_counter()
    out: dict = {"name": name, "order": group.order}
    try:
        cache = IsoCache()
        instances = extension_instances(group, cap=cap, cache=cache)
        results = [check_direct_extension(group, inst, cap=cap) for inst in instances]
        violations = [
            {"group": group_to_json_dict(group), "instance": _instance_json_dict(r.instance)}
            for r in results
            if not r.ok
        ]
        props = property_suite(group, cap=cap, cache=cache, instances=instances)
        out["instances"] = len(instances)
        out["violations"] = violations
        out["properties"] = {k: ("pass" if v["pass"] else "fail") for k, v in props.items()}
        failures = {k: v["failures"] for k, v in props.items() if v["failures"]}
        if failures:
            out["property_failures"] = failures
    except OrderBound as exc:
        out["skipped"] = str(exc)
    out["ms"] = (time.perf_counter() - start) * 1000.0
    return out


def verify_catalog(entries: list[CatalogEntry], config: VerifyConfig) -> Report:
    """Run the full premise/theorem/property sweep over catalog entries.

    Work is partitioned per group; the merged report is canonically ordered
    and independent of the parallelism degree.
    """
    payloads = [
        (e.name, e.group, config.lattice_cap)
        for e in sorted(entries, key=lambda e: (e.group.order, e.name))
    ]
    if config.jobs > 1:
        with get_context("fork").Pool(config.jobs) as pool:
            groups = pool.map(_verify_one, payloads, chunksize=1)
    else:
        groups = [_verify_one(p) for p in payloads]
    violations = sum(len(g.get("violations", ())) for g in groups)
    prop_failures = sum(
        1
        for g in groups
        for status in g.get("properties", {}).values()
        if status != "pass"
    )
    skipped = sum(1 for g in groups if "skipped" in g)
    summary = {
        "groups": len(groups),
        "instances": sum(g.get("instances", 0) for g in groups),
        "violations": violations,
        "property_failures": prop_failures,
        "skipped": skipped,
    }
    status = "PASS" if violations == 0 and prop_failures == 0 else "FAIL"
    # jobs is an execution detail, not verification config: the report must
    # come out byte-identical at any parallelism degree
    config_dict = {k: v for k, v in asdict(config).items() if k != "jobs"}
    return Report(status, config_dict, summary, groups)
