"""Acceptance criteria 1-11, one test each.

Every criterion records a ``PASS``/``FAIL`` line in ``LINES``; pytest shows
them in the terminal summary and ``python3 tests/test_acceptance.py`` prints
them directly.
"""

import itertools
import math
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from oracles import (  # noqa: E402
    eig2_hermitian,
    entropy_bits_direct,
    partial_trace_naive,
    qubit_fidelity,
    simultaneously_diagonalizable,
)
from qmatrix import (  # noqa: E402
    Basis,
    DensityMatrix,
    QuantumFuzzySet,
    cartesian_lift,
    catalog,
    channel_apply,
    errors,
    factor_through_lift,
    fidelity,
    frobenius_copy_defect,
    identity_channel,
    l1_coherence,
    membership,
    morphism_compose,
    morphism_dagger,
    morphism_make,
    morphism_tensor,
    mutual_information,
    partial_trace,
    povm_measure,
    purity,
    qfs_decohere,
    qfs_is_classical,
    qmatrix_make,
    qmatrix_sections,
    trace_distance,
    unitary_channel,
    von_neumann_entropy,
)
from qmatrix.categorical import channels_equal, unitary_image  # noqa: E402
from qmatrix.random import random_channel, random_density, random_povm, random_pure, random_unitary  # noqa: E402

LINES: list[str] = []
SEED = 20061015


def _record(n: int, title: str, ok: bool, detail: str) -> bool:
    LINES.append(f"{'PASS' if ok else 'FAIL'}  criterion {n:>2}: {title} ({detail})")
    return ok


def _max_abs(a, b) -> float:
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b))))


# criteria


def criterion_1() -> bool:
    q = catalog.cat_dog_pet()
    err_p = max(abs(purity(q[x]) - p) for x, p in zip(q.labels, (0.76, 0.60, 0.52)))
    err_m = max(abs(membership(q[x]) - m) for x, m in zip(q.labels, (0.3, 0.6, 0.5)))
    ok = err_p <= 1e-12 and err_m <= 1e-12
    return _record(1, "cat-dog-pet purities and memberships", ok, f"max errors {err_p:.1e}, {err_m:.1e}")


def criterion_2() -> bool:
    q = catalog.cat_dog_pet()
    reference = {("cat", "dog"): (0.8898, 0.89), ("cat", "pet"): (0.8994, 0.90), ("dog", "pet"): (0.9782, 0.98)}
    worst_oracle = worst_four = worst_two = 0.0
    for (x, y), (four, two) in reference.items():
        f = fidelity(q[x], q[y])
        worst_oracle = max(worst_oracle, abs(f - qubit_fidelity(q[x].matrix, q[y].matrix)))
        worst_four = max(worst_four, abs(f - four))
        worst_two = max(worst_two, abs(f - two))
    ok = worst_oracle <= 5e-4 and worst_four <= 5e-4 and worst_two <= 0.005
    detail = f"oracle {worst_oracle:.1e}, four-decimal {worst_four:.1e}, two-decimal {worst_two:.1e}"
    return _record(2, "cat-dog-pet fidelities", ok, detail)


def criterion_3() -> bool:
    q = catalog.cat_dog_pet()
    t = trace_distance(q["pet"], DensityMatrix(0.5 * (q["cat"].matrix + q["dog"].matrix)))
    return _record(3, "pet is not the even mixture of cat and dog", t > 0.01, f"trace distance {t:.4f}")


def criterion_4() -> bool:
    qm = catalog.bell_qmatrix()
    sec_err = max(_max_abs(partial_trace(qm, [x]).matrix, np.eye(2) / 2) for x in qm.labels)
    s_a = von_neumann_entropy(partial_trace(qm, ["A"]))
    s_b = von_neumann_entropy(partial_trace(qm, ["B"]))
    s_ab = von_neumann_entropy(qm.global_state)
    mi = mutual_information(qm, ["A"], ["B"])
    ent_err = max(abs(s_a - 1), abs(s_b - 1), abs(s_ab), abs(mi - 2))
    ok = sec_err <= 1e-12 and ent_err <= 1e-9
    return _record(4, "Bell Q-Matrix sections and entropies", ok, f"section error {sec_err:.1e}, entropy error {ent_err:.1e}")


def criterion_5() -> bool:
    q = catalog.cat_dog_pet()
    verdict, norm = qfs_is_classical(q)
    dq = qfs_decohere(q, Basis.computational(2))
    dec_verdict, _ = qfs_is_classical(dq)
    err_m = max(abs(membership(dq[x]) - m) for x, m in zip(dq.labels, (0.3, 0.6, 0.5)))
    coh = max(l1_coherence(dq[x]) for x in dq.labels)
    ok = (not verdict) and dec_verdict and err_m <= 1e-12 and coh <= 1e-12
    detail = f"commutator norm {norm:.4f}, decohered membership error {err_m:.1e}, coherence {coh:.1e}"
    return _record(5, "classicality before and after decoherence", ok, detail)


def criterion_6() -> bool:
    rng = np.random.default_rng(SEED + 6)
    worst = math.inf
    for k in range(500):
        n = 2 + k % 2
        d = 2**n
        rank = int(rng.integers(1, d + 1))
        rho = random_density(d, rng, rank=rank)
        qm = qmatrix_make([f"q{i}" for i in range(n)], [2] * n, rho)
        excess = sum(von_neumann_entropy(s) for s in qmatrix_sections(qm).states) - von_neumann_entropy(rho)
        worst = min(worst, excess)
    return _record(6, "section entropies bound the global entropy", worst >= -1e-9, f"500 states, min excess {worst:.3e}")


def _random_qfs(rng, d: int, n: int, prefix: str) -> QuantumFuzzySet:
    return QuantumFuzzySet([f"{prefix}{i}" for i in range(n)], [random_density(d, rng) for _ in range(n)])


def _image(rng, q: QuantumFuzzySet, prefix: str):
    """A random channel, a random relabelling, and the morphism onto the image."""
    ch = random_channel(q.dim, int(rng.integers(1, 4)), rng)
    perm = rng.permutation(len(q))
    lm = {x: f"{prefix}{perm[i]}" for i, x in enumerate(q.labels)}
    labels = [f"{prefix}{i}" for i in range(len(q))]
    inv = {v: k for k, v in lm.items()}
    target = QuantumFuzzySet(labels, [channel_apply(ch, q[inv[y]]) for y in labels], q.dim)
    return morphism_make(q, target, lm, ch)


def _composition_laws(rng, cases: int):
    worst_closure = worst_action = worst_assoc = 0.0
    for _ in range(cases):
        d = int(rng.integers(2, 5))
        x = _random_qfs(rng, d, int(rng.integers(1, 4)), "x")
        f = _image(rng, x, "y")
        g = _image(rng, f.target, "z")
        h = _image(rng, g.target, "w")
        gf = morphism_compose(g, f)
        again = morphism_make(gf.source, gf.target, gf.label_map, gf.channel)
        worst_closure = max(worst_closure, again.defect())
        rho = random_density(d, rng)
        seq = channel_apply(g.channel, channel_apply(f.channel, rho))
        worst_action = max(worst_action, _max_abs(channel_apply(gf.channel, rho).matrix, seq.matrix))
        left = morphism_compose(morphism_compose(h, g), f)
        right = morphism_compose(h, gf)
        if dict(left.label_map) != dict(right.label_map):
            return math.inf, math.inf, math.inf
        diff = _max_abs(channel_apply(left.channel, rho).matrix, channel_apply(right.channel, rho).matrix)
        worst_assoc = max(worst_assoc, diff, _max_abs(left.channel.choi(), right.channel.choi()))
    return worst_closure, worst_action, worst_assoc


def _tensor_laws(rng, cases: int) -> float:
    worst = 0.0
    for _ in range(cases):
        d1, d2 = (int(v) for v in rng.integers(2, 4, size=2))
        x1 = _random_qfs(rng, d1, int(rng.integers(1, 3)), "a")
        x2 = _random_qfs(rng, d2, int(rng.integers(1, 3)), "b")
        f1, f2 = _image(rng, x1, "c"), _image(rng, x2, "e")
        g1, g2 = _image(rng, f1.target, "p"), _image(rng, f2.target, "r")
        t = morphism_tensor(f1, f2)
        worst = max(worst, t.defect())
        rho, sigma = random_density(d1, rng), random_density(d2, rng)
        lhs = channel_apply(t.channel, rho.tensor(sigma)).matrix
        rhs = np.kron(channel_apply(f1.channel, rho).matrix, channel_apply(f2.channel, sigma).matrix)
        worst = max(worst, _max_abs(lhs, rhs))
        # interchange law on an entangled input
        a = morphism_tensor(morphism_compose(g1, f1), morphism_compose(g2, f2))
        b = morphism_compose(morphism_tensor(g1, g2), t)
        if dict(a.label_map) != dict(b.label_map):
            return math.inf
        omega = random_pure(d1 * d2, rng)
        worst = max(worst, _max_abs(channel_apply(a.channel, omega).matrix, channel_apply(b.channel, omega).matrix))
    return worst


def _dagger_laws(rng, cases: int) -> float:
    worst = 0.0
    for _ in range(cases):
        d = int(rng.integers(2, 5))
        n = int(rng.integers(1, 4))
        x = _random_qfs(rng, d, n, "x")
        perm = rng.permutation(n)
        m = unitary_image(x, random_unitary(d, rng), {f"x{i}": f"y{perm[i]}" for i in range(n)})
        dag = morphism_dagger(m)
        dd = morphism_dagger(dag)
        if dict(dd.label_map) != dict(m.label_map):
            return math.inf
        worst = max(worst, _max_abs(dd.channel.choi(), m.channel.choi()))
        back = morphism_compose(dag, m)
        if dict(back.label_map) != {lab: lab for lab in x.labels}:
            return math.inf
        worst = max(worst, _max_abs(back.channel.choi(), identity_channel(d).choi()))
        forth = morphism_compose(m, dag)
        worst = max(worst, _max_abs(forth.channel.choi(), identity_channel(d).choi()))
        rho = random_density(d, rng)
        worst = max(worst, _max_abs(channel_apply(back.channel, rho).matrix, rho.matrix))
    return worst


def _lift_laws(rng) -> tuple[int, int]:
    """Exhaustive over f: Y -> X with |X| <= 4, |Y| <= 4. Returns (cases, failures)."""
    cases = failures = 0
    zs = ["z0", "z1"]
    for nx in range(1, 5):
        xs = [f"x{i}" for i in range(nx)]
        target = QuantumFuzzySet(xs, [random_density(2, rng) for _ in xs])
        u = random_unitary(2, rng)
        ch = unitary_channel(u)
        for ny in range(0, 5):
            ys = [f"y{i}" for i in range(ny)]
            all_h = [dict(zip(zs, hv)) for hv in itertools.product(ys, repeat=len(zs))]
            for fv in itertools.product(xs, repeat=ny):
                f = dict(zip(ys, fv))
                pullback, lift = cartesian_lift(f, target)
                cases += 1
                if any(not pullback[y].allclose(target[f[y]], 0.0) for y in ys) or lift.defect() > 1e-12:
                    failures += 1
                    continue
                injective = len(set(fv)) == len(fv)
                # every g: Z -> X whose label map lands in the image of f
                image = sorted(set(fv))
                for gv in itertools.product(image, repeat=len(zs)):
                    g_lm = dict(zip(zs, gv))
                    src = QuantumFuzzySet(
                        zs, [DensityMatrix(u.conj().T @ target[x].matrix @ u) for x in gv]
                    )
                    g = morphism_make(src, target, g_lm, ch)
                    over = 0
                    for h in all_h:
                        fits = all(f[h[z]] == g_lm[z] for z in zs)
                        try:
                            k = factor_through_lift(lift, g, h)
                        except errors.LabelMismatch:
                            if fits:
                                failures += 1
                            continue
                        over += 1
                        back = morphism_compose(lift, k)
                        if not fits or dict(back.label_map) != g_lm or not channels_equal(back.channel, g.channel):
                            failures += 1
                        # the lift carries the identity channel, so the factor's channel is forced
                        if not channels_equal(k.channel, g.channel):
                            failures += 1
                    if over == 0 or (injective and over != 1):
                        failures += 1
    return cases, failures


def criterion_7() -> bool:
    rng = np.random.default_rng(SEED + 7)
    closure, action, assoc = _composition_laws(rng, 500)
    tensor = _tensor_laws(rng, 500)
    dagger = _dagger_laws(rng, 500)
    lift_cases, lift_fail = _lift_laws(rng)
    ok = (
        closure <= 1e-10
        and action <= 1e-10
        and assoc <= 1e-10
        and tensor <= 1e-12
        and dagger <= 1e-10
        and lift_fail == 0
    )
    detail = (
        f"composition closure {closure:.1e}, action {action:.1e}, associativity {assoc:.1e}; "
        f"tensor {tensor:.1e}; dagger {dagger:.1e}; lift {lift_cases} label maps, {lift_fail} failures"
    )
    return _record(7, "category laws", ok, detail)


def _commuting_family(rng, d: int, n: int) -> list[DensityMatrix]:
    v = random_unitary(d, rng)
    fam = []
    for _ in range(n):
        p = rng.dirichlet(np.ones(d))
        if rng.random() < 0.3:
            # force a degenerate spectrum now and then
            p[1] = p[0]
            p /= p.sum()
        fam.append(DensityMatrix(v @ np.diag(p) @ v.conj().T))
    return fam


def criterion_8() -> bool:
    rng = np.random.default_rng(SEED + 8)
    disagreements = 0
    counts = {True: 0, False: 0}
    for k in range(400):
        d = int(rng.integers(2, 5))
        n = int(rng.integers(2, 5))
        if k < 200:
            fam = _commuting_family(rng, d, n)
        else:
            fam = [random_density(d, rng) for _ in range(n)]
        q = QuantumFuzzySet([f"s{i}" for i in range(n)], fam)
        verdict, _ = qfs_is_classical(q)
        oracle = simultaneously_diagonalizable([s.matrix for s in fam], rng)
        counts[verdict] += 1
        disagreements += verdict != oracle
    ok = disagreements == 0 and counts[True] == 200
    return _record(8, "classicality matches simultaneous diagonalization", ok,
                   f"400 families, {counts[True]} classical, {disagreements} disagreements")


def criterion_9() -> bool:
    rng = np.random.default_rng(SEED + 9)
    worst_proj = 0.0
    for d in (2, 3, 4):
        for b in (Basis.computational(d), Basis.from_unitary(random_unitary(d, rng))):
            for vec in b.vectors:
                worst_proj = max(worst_proj, frobenius_copy_defect(DensityMatrix.from_vector(vec), b))
    half = frobenius_copy_defect(DensityMatrix.maximally_mixed(2))
    comp = Basis.computational(2)
    low = math.inf
    sampled = 0
    while sampled < 100:
        rho = random_density(2, rng)
        if purity(rho) > 0.9:
            continue
        sampled += 1
        low = min(low, frobenius_copy_defect(rho, comp))
    ok = worst_proj <= 1e-10 and abs(half - 1.0) <= 1e-10 and low >= 0.1
    return _record(9, "copy-map obstruction", ok,
                   f"projector defect {worst_proj:.1e}, I/2 defect {half:.12f}, min over 100 mixed {low:.4f}")


def criterion_10() -> bool:
    rng = np.random.default_rng(SEED + 10)
    pt = 0.0
    for _ in range(300):
        n = int(rng.integers(1, 4))
        dims = [int(v) for v in rng.integers(1, 4, size=n)]
        labels = [f"s{i}" for i in range(n)]
        rho = random_density(math.prod(dims), rng)
        keep = [i for i in range(n) if rng.random() < 0.5] or [int(rng.integers(n))]
        ours = partial_trace(qmatrix_make(labels, dims, rho), [labels[i] for i in keep]).matrix
        pt = max(pt, _max_abs(ours, partial_trace_naive(rho.matrix, dims, set(keep))))
    fid = 0.0
    for _ in range(300):
        a, b = random_density(2, rng), random_density(2, rng)
        fid = max(fid, abs(fidelity(a, b) - qubit_fidelity(a.matrix, b.matrix)))
    ent = 0.0
    for _ in range(300):
        a = random_density(2, rng)
        ent = max(ent, abs(von_neumann_entropy(a) - entropy_bits_direct(eig2_hermitian(a.matrix))))
        d = int(rng.integers(2, 6))
        b = random_density(d, rng)
        # general (non-Hermitian) eigensolver as an independent spectrum route
        eigs = np.linalg.eigvals(b.matrix).real
        ent = max(ent, abs(von_neumann_entropy(b) - entropy_bits_direct(eigs)))
    ok = pt <= 1e-12 and fid <= 1e-10 and ent <= 1e-12
    return _record(10, "oracle equivalences", ok, f"partial trace {pt:.1e}, fidelity {fid:.1e}, entropy {ent:.1e}")


def criterion_11() -> bool:
    rng = np.random.default_rng(SEED + 11)
    lowest, worst_sum = math.inf, 0.0
    povms = [random_povm(int(rng.integers(2, 5)), int(rng.integers(2, 6)), rng) for _ in range(50)]
    states = {d: [random_density(d, rng) for _ in range(200)] for d in (2, 3, 4)}
    for povm in povms:
        for rho in states[povm.dim]:
            p = np.array(list(povm_measure(rho, povm).values()))
            lowest = min(lowest, float(p.min()))
            worst_sum = max(worst_sum, abs(p.sum() - 1.0))
    ok = lowest >= -1e-10 and worst_sum <= 1e-10
    return _record(11, "POVM outcome distributions", ok, f"200 states x 50 POVMs, min p {lowest:.2e}, sum error {worst_sum:.1e}")


CRITERIA = [
    criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
    criterion_7, criterion_8, criterion_9, criterion_10, criterion_11,
]


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"criterion_{i}" for i in range(1, 12)])
def test_acceptance(criterion):
    assert criterion(), LINES[-1]


if __name__ == "__main__":
    results = [c() for c in CRITERIA]
    print("\n".join(LINES))
    sys.exit(0 if all(results) else 1)
