"""End-to-end reproductions of the cat-dog-pet, Bell and categorical reference values.

Each reproduction returns a list of :class:`Check` records; ``qfs examples``
prints one line per record.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import catalog
from .categorical import (
    cartesian_lift,
    channel_apply,
    channel_is_unitary,
    channel_tensor,
    channels_equal,
    decoherence_morphism,
    dephasing_channel,
    frobenius_copy_defect,
    identity_channel,
    identity_morphism,
    morphism_compose,
    morphism_dagger,
    morphism_make,
    morphisms_equal,
    unitary_image,
)
from .core import (
    PAULI_X,
    Basis,
    DensityMatrix,
    QuantumFuzzySet,
    l1_coherence,
    membership,
    mutual_information,
    partial_trace,
    purity,
    qfs_decohere,
    qfs_is_classical,
    qmatrix_sections,
    realizes,
    von_neumann_entropy,
)
from .errors import MorphismConditionViolated, NotUnitary, UnknownExample
from .information import fidelity, trace_distance


@dataclass(frozen=True)
class Check:
    """One reference number (or verdict) against its recomputation.

    ``mode`` is ``"abs"`` (|observed - expected| <= tol), ``"min"``
    (observed >= expected) or ``"max"`` (observed <= expected).
    """

    name: str
    observed: float
    expected: float
    tol: float = 0.0
    mode: str = "abs"

    @property
    def passed(self) -> bool:
        if self.mode == "min":
            return self.observed >= self.expected
        if self.mode == "max":
            return self.observed <= self.expected
        return abs(self.observed - self.expected) <= self.tol

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        if self.mode == "abs":
            want = f"{self.expected:.6g} ± {self.tol:g}"
        else:
            want = f"{'>=' if self.mode == 'min' else '<='} {self.expected:.6g}"
        return f"{tag}  {self.name}: {self.observed:.10g} (expected {want})"


def _flag(name: str, ok: bool) -> Check:
    return Check(name, float(ok), 1.0)


def _max_abs(a: DensityMatrix, b) -> float:
    return float(np.max(np.abs(a.matrix - np.asarray(b))))


def _qubit_closed_form(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    a, b = rho.matrix, sigma.matrix
    det = np.linalg.det(a).real * np.linalg.det(b).real
    return float(np.trace(a @ b).real + 2 * math.sqrt(max(det, 0.0)))


def cat_dog_pet() -> list[Check]:
    q = catalog.cat_dog_pet()
    checks = []
    for x, p in zip(q.labels, (0.76, 0.60, 0.52)):
        checks.append(Check(f"purity({x})", purity(q[x]), p, 1e-12))
    for x, m in zip(q.labels, (0.3, 0.6, 0.5)):
        checks.append(Check(f"membership({x})", membership(q[x]), m, 1e-12))

    reference = {("cat", "dog"): (0.89, 0.8898), ("cat", "pet"): (0.90, 0.8994), ("dog", "pet"): (0.98, 0.9782)}
    for (x, y), (two, four) in reference.items():
        f = fidelity(q[x], q[y])
        checks.append(Check(f"F({x},{y}) vs two-decimal value", f, two, 0.005))
        checks.append(Check(f"F({x},{y}) vs four-decimal value", f, four, 5e-4))
        checks.append(Check(f"F({x},{y}) vs qubit closed form", f, _qubit_closed_form(q[x], q[y]), 1e-10))

    half = DensityMatrix(0.5 * (q["cat"].matrix + q["dog"].matrix))
    checks.append(Check("T(pet, (cat+dog)/2) non-mixture", trace_distance(q["pet"], half), 0.01, mode="min"))

    verdict, norm = qfs_is_classical(q)
    checks.append(_flag("cat-dog-pet is not classical", not verdict))
    checks.append(Check("max commutator norm", norm, 1e-9 * q.dim, mode="min"))

    dq = qfs_decohere(q)
    checks.append(_flag("decohered set is classical", qfs_is_classical(dq)[0]))
    for x, m in zip(q.labels, (0.3, 0.6, 0.5)):
        checks.append(Check(f"decohered membership({x})", membership(dq[x]), m, 1e-12))
        checks.append(Check(f"decohered coherence({x})", l1_coherence(dq[x]), 0.0, 1e-12))
    return checks


def bell() -> list[Check]:
    qm = catalog.bell_qmatrix()
    half = np.eye(2) / 2
    checks = []
    for x in qm.labels:
        sec = partial_trace(qm, [x])
        checks.append(Check(f"section {x} = I/2 (max entry error)", _max_abs(sec, half), 0.0, 1e-12))
        checks.append(Check(f"S({x})", von_neumann_entropy(sec), 1.0, 1e-9))
    checks.append(Check("S(AB)", von_neumann_entropy(qm.global_state), 0.0, 1e-9))
    checks.append(Check("I(A:B)", mutual_information(qm, ["A"], ["B"]), 2.0, 1e-9))
    mixed = QuantumFuzzySet(["A", "B"], [DensityMatrix.maximally_mixed(2)] * 2)
    checks.append(_flag("Bell Q-Matrix realizes {A: I/2, B: I/2}", realizes(qm, mixed)))
    sections = qmatrix_sections(qm)
    checks.append(_flag("sections are classical", qfs_is_classical(sections)[0]))

    ghz = catalog.ghz_qmatrix(3)
    checks.append(Check("GHZ I(q0:q1)", mutual_information(ghz, ["q0"], ["q1"]), 1.0, 1e-9))
    return checks


def categorical() -> list[Check]:
    q = catalog.cat_dog_pet()
    comp = Basis.computational(2)
    checks = []

    dm = decoherence_morphism(q, comp)
    checks.append(Check("decoherence morphism defect", dm.defect(), 1e-9, mode="max"))

    try:
        morphism_make(q, q, {x: x for x in q.labels}, dephasing_channel(comp))
        rejected = False
    except MorphismConditionViolated:
        rejected = True
    checks.append(_flag("dephasing cat-dog-pet onto itself is rejected", rejected))

    ident = identity_morphism(q)
    checks.append(_flag("id o id = id", morphisms_equal(morphism_compose(ident, ident), ident)))

    x_mor = unitary_image(q, PAULI_X)
    composite = morphism_compose(decoherence_morphism(x_mor.target, comp), x_mor)
    checks.append(Check("(decohere o bit flip) defect", composite.defect(), 1e-9, mode="max"))

    try:
        morphism_dagger(dm)
        dagger_rejected = False
    except NotUnitary:
        dagger_rejected = True
    checks.append(_flag("dagger of the decoherence morphism is rejected", dagger_rejected))
    checks.append(_flag("dephasing channel is not unitary", channel_is_unitary(dephasing_channel(comp)) is None))

    xd = morphism_dagger(x_mor)
    checks.append(_flag("dagger is involutive", morphisms_equal(morphism_dagger(xd), x_mor)))
    checks.append(_flag("m† o m acts as identity", channels_equal(
        morphism_compose(xd, x_mor).channel, identity_channel(2))))

    cat, dog = q["cat"], q["dog"]
    lhs = channel_apply(channel_tensor(dephasing_channel(comp), identity_channel(2)), cat.tensor(dog))
    rhs = channel_apply(dephasing_channel(comp), cat).tensor(dog)
    checks.append(Check("tensor functoriality (max entry error)", _max_abs(lhs, rhs.matrix), 0.0, 1e-12))

    pullback, lift = cartesian_lift({"a": "cat", "b": "cat"}, q)
    same = pullback["a"].allclose(cat, 0) and pullback["b"].allclose(cat, 0)
    checks.append(_flag("Cartesian lift pulls back cat to a and b", same))
    checks.append(Check("Cartesian lift defect", lift.defect(), 0.0, 1e-12))

    for i, proj in enumerate((DensityMatrix.basis_state(0, 2), DensityMatrix.basis_state(1, 2))):
        checks.append(Check(f"copy defect |{i}><{i}|", frobenius_copy_defect(proj, comp), 0.0, 1e-10))
    checks.append(Check("copy defect I/2", frobenius_copy_defect(DensityMatrix.maximally_mixed(2), comp), 1.0, 1e-10))
    checks.append(Check("copy defect cat", frobenius_copy_defect(cat, comp), 0.1, mode="min"))
    checks.append(Check("copy defect |+><+|", frobenius_copy_defect(catalog.plus_state(), comp), 0.1, mode="min"))
    return checks


EXAMPLES = {
    "cat-dog-pet": cat_dog_pet,
    "bell": bell,
    "categorical": categorical,
}


def run(name: str) -> list[Check]:
    try:
        fn = EXAMPLES[name]
    except KeyError:
        raise UnknownExample(f"UnknownExample: {name!r}; choose from {sorted(EXAMPLES)}") from None
    return fn()
