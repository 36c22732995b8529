"""The invariant suite run by ``relap check``."""

from __future__ import annotations

from dataclasses import dataclass

from .chains import IntegerMatrix, boundary_matrix, relative_boundary_matrix
from .complex_core import ComplexPair
from .errors import InvariantViolation
from .homology import betti, euler_poincare_check
from .spectra import (
    KINDS,
    _closed_form,
    _product_form,
    chi,
    laplacian,
    same_nonzero_spectrum,
    spectrum,
    zero_multiplicities,
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    message: str = ""


def _dims(pair: ComplexPair) -> range:
    return range(0, max(pair.dim, 0) + 1)


def _boundary_squared(pair: ComplexPair) -> CheckResult:
    X = pair.complex
    for k in range(0, X.dim + 1):
        for name, lo, hi in (("absolute", boundary_matrix(X, k), boundary_matrix(X, k + 1)),
                             ("relative", relative_boundary_matrix(pair, k),
                              relative_boundary_matrix(pair, k + 1))):
            if not (lo @ hi).is_zero():
                return CheckResult("boundary_squared", False, f"{name} ∂_{k}∂_{k + 1} != 0")
    return CheckResult("boundary_squared", True)


def _perturb(M: IntegerMatrix) -> IntegerMatrix:
    rows = M.rows()
    rows[0][0] += 1
    return IntegerMatrix.from_rows(rows, M.row_labels, M.col_labels)


def _closed_form_consistency(pair: ComplexPair, corrupt: bool) -> CheckResult:
    injected = False
    for k in _dims(pair):
        for kind in KINDS:
            prod = _product_form(pair, k, kind)
            if corrupt and not injected and prod.shape[0]:
                prod, injected = _perturb(prod), True
            if prod.entries != _closed_form(pair, k, kind).entries:
                return CheckResult("closed_form", False, f"L_{k} ({kind}) product and closed form differ")
    if corrupt and not injected:
        return CheckResult("closed_form", False, "fault injected into an empty Laplacian")
    return CheckResult("closed_form", True)


def _euler_poincare(pair: ComplexPair) -> CheckResult:
    ok = euler_poincare_check(pair)
    return CheckResult("euler_poincare", ok, "" if ok else "alternating sums differ")


def _ranks_and_nullities(pair: ComplexPair) -> CheckResult:
    try:
        for k in _dims(pair):
            chi(pair, k)
            zero_multiplicities(pair, k)
    except InvariantViolation as exc:
        return CheckResult("nullities", False, str(exc))
    return CheckResult("nullities", True)


def _hodge(pair: ComplexPair) -> CheckResult:
    for k in _dims(pair):
        rep = spectrum(laplacian(pair, k, "full"))
        zeros = sum(1 for x in rep.eigenvalues if abs(x) < rep.tau_zero)
        b = betti(pair, k)
        if zeros != b:
            return CheckResult("hodge", False, f"nullity of L_{k} is {zeros} but β_{k} = {b}")
    return CheckResult("hodge", True)


def _ud_du(pair: ComplexPair) -> CheckResult:
    for k in range(0, pair.dim):
        ud = spectrum(laplacian(pair, k, "up_down")).eigenvalues
        du = spectrum(laplacian(pair, k + 1, "down_up")).eigenvalues
        if not same_nonzero_spectrum(ud, du):
            return CheckResult("ud_du", False, f"s(L^ud_{k}) and s(L^du_{k + 1}) differ")
    return CheckResult("ud_du", True)


def _full_split(pair: ComplexPair) -> CheckResult:
    for k in _dims(pair):
        full = spectrum(laplacian(pair, k, "full")).eigenvalues
        parts = (spectrum(laplacian(pair, k, "up_down")).eigenvalues
                 + spectrum(laplacian(pair, k, "down_up")).eigenvalues)
        if not same_nonzero_spectrum(full, parts):
            return CheckResult("full_split", False, f"s(L_{k}) is not s(L^ud_{k}) ⊔ s(L^du_{k})")
    return CheckResult("full_split", True)


def run_checks(pair: ComplexPair, corrupt: bool = False) -> list[CheckResult]:
    """Run every invariant on ``pair``; ``corrupt`` injects a fault for testing the harness."""
    results = [_boundary_squared(pair), _closed_form_consistency(pair, corrupt)]
    for check in (_euler_poincare, _ranks_and_nullities, _hodge, _ud_du, _full_split):
        try:
            results.append(check(pair))
        except InvariantViolation as exc:
            results.append(CheckResult(check.__name__.lstrip("_"), False, str(exc)))
    return results
