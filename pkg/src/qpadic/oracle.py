"""Finite Weyl-operator models on Z/p^N for cross-checking the exact modules.

For an odd prime p and even N, phase space is (Z/p^N)^2 and W(a, b) acts
on C^(p^N) by

    (W(a, b) f)(x) = exp(2*pi*i*(b*x + h*a*b)/p^N) * f(x + a),

where h is the inverse of 2 mod p^N. These matrices satisfy the same
composition rule as the exact characters:

    W(z) W(z') = exp(2*pi*i*h*D(z, z')/p^N) * W(z + z'),   D((a,b),(a',b')) = a*b' - b*a'.

A window of half-width m = N/2 embeds exact data: the lattice
diag(p^e1, p^e2) * L0 with -m <= e_i <= m becomes the product subgroup
p^(m+e1)Z x p^(m+e2)Z, and a phase-space point z with entries of
valuation >= -m becomes p^m * z mod p^N. Densities built from subgroup
sums realize the exact Gaussian states, so spectra, entropies,
characteristic functions and channel outputs can all be checked
numerically against the exact predictions.

Everything here is floating point by design; tolerances are carried by
the callers. The exact modules never import this one.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import NotAStateError
from .lattice import Lattice, Mat2, standard_lattice
from .padic import is_prime, valuation

__all__ = [
    "DIMENSION_CAP",
    "ScanCase",
    "WeylSystem",
    "ccr_deviation",
    "ccr_scan",
    "channel_scan",
    "char_indicator_deviation",
    "char_table",
    "char_value",
    "entropy_nats",
    "exponent_lattice",
    "fourier_subgroup_deviation",
    "gaussian_density",
    "run_battery",
    "validate_density",
    "weyl_operator",
]

#: Hard cap on the Hilbert-space dimension p**N.
DIMENSION_CAP = 343

EIGENVALUE_FLOOR = 1e-12
PSD_TOLERANCE = 1e-9
WITNESS_TOLERANCE = 1e-6


@dataclass(frozen=True)
class WeylSystem:
    """Finite model parameters: odd prime p, even window width N."""

    p: int
    N: int

    def __post_init__(self) -> None:
        if not is_prime(self.p) or self.p == 2:
            raise ValueError(f"p must be an odd prime, got {self.p!r}")
        if not isinstance(self.N, int) or self.N <= 0 or self.N % 2:
            raise ValueError(f"N must be a positive even integer, got {self.N!r}")
        if self.p**self.N > DIMENSION_CAP:
            raise ValueError(
                f"dimension {self.p}**{self.N} exceeds the cap {DIMENSION_CAP}"
            )

    @property
    def dim(self) -> int:
        return self.p**self.N

    @property
    def half(self) -> int:
        """Inverse of 2 modulo p**N."""
        return pow(2, -1, self.dim)

    @property
    def window(self) -> int:
        """Half-width m = N/2 of the exponent window."""
        return self.N // 2


def weyl_operator(system: WeylSystem, a: int, b: int) -> np.ndarray:
    """Matrix of W(a, b); coordinates are taken mod p**N."""
    d = system.dim
    a %= d
    b %= d
    x = np.arange(d)
    phases = np.exp(2j * np.pi * ((b * x + system.half * a * b) % d) / d)
    out = np.zeros((d, d), dtype=complex)
    out[x, (x + a) % d] = phases
    return out


def ccr_deviation(system: WeylSystem, z1: tuple[int, int], z2: tuple[int, int]) -> float:
    """Operator-norm defect of W(z1) W(z2) = phase * W(z1 + z2)."""
    d = system.dim
    a1, b1 = z1
    a2, b2 = z2
    lhs = weyl_operator(system, a1, b1) @ weyl_operator(system, a2, b2)
    disc = a1 * b2 - b1 * a2
    phase = np.exp(2j * np.pi * ((system.half * disc) % d) / d)
    rhs = phase * weyl_operator(system, a1 + a2, b1 + b2)
    return float(np.linalg.norm(lhs - rhs, 2))


def ccr_scan(system: WeylSystem, sample: int | None = None, seed: int = 0) -> tuple[float, int]:
    """Max CCR defect over pairs of phase-space points.

    With sample=None the full pair grid is used; that is only sensible
    when the phase space is tiny (d**2 <= 81), so larger systems should
    pass a sample size. Returns (max deviation, number of pairs checked).
    """
    d = system.dim
    points = [(a, b) for a in range(d) for b in range(d)]
    if sample is None:
        pairs = [(z1, z2) for z1 in points for z2 in points]
    else:
        rng = random.Random(seed)
        pairs = [
            (
                (rng.randrange(d), rng.randrange(d)),
                (rng.randrange(d), rng.randrange(d)),
            )
            for _ in range(sample)
        ]
    worst = 0.0
    for z1, z2 in pairs:
        dev = ccr_deviation(system, z1, z2)
        if dev > worst:
            worst = dev
    return worst, len(pairs)


def _subgroup_range(system: WeylSystem, absolute_exponent: int) -> range:
    if not 0 <= absolute_exponent <= system.N:
        raise ValueError(f"subgroup exponent {absolute_exponent} outside [0, {system.N}]")
    step = system.p**absolute_exponent
    return range(0, system.dim, step)


def gaussian_density(
    system: WeylSystem,
    exponent1: int,
    exponent2: int,
    shift: tuple[int, int] = (0, 0),
) -> np.ndarray:
    """Density matrix of the finite Gaussian state for a product subgroup.

    The subgroup is S = p^(m+exponent1)Z x p^(m+exponent2)Z, the window
    image of diag(p^exponent1, p^exponent2) * L0. The density is
    p^(-N) * sum over z in S of W(-z), conjugated by W(shift). Requires
    window exponents in [-m, m] and exponent1 + exponent2 >= 0 (otherwise
    the sum is not positive and no state exists).
    """
    m = system.window
    if not (-m <= exponent1 <= m and -m <= exponent2 <= m):
        raise ValueError(f"exponents {(exponent1, exponent2)} outside window [-{m}, {m}]")
    if exponent1 + exponent2 < 0:
        raise NotAStateError(
            f"exponent sum {exponent1 + exponent2} < 0: subgroup is not isotropic"
        )
    d = system.dim
    h = system.half
    s1 = _subgroup_range(system, m + exponent1)
    s2 = np.array(_subgroup_range(system, m + exponent2))
    x = np.arange(d)
    rho = np.zeros((d, d), dtype=complex)
    for z1 in s1:
        # W(-z1, -z2)[x, (x - z1) % d] = exp(2*pi*i*(-z2*x + h*z1*z2)/d)
        exponents = (-np.outer(s2, x) + h * z1 * s2[:, None]) % d
        rho[x, (x - z1) % d] += np.exp(2j * np.pi * exponents / d).sum(axis=0)
    rho /= d
    if shift != (0, 0):
        w = weyl_operator(system, *shift)
        rho = w @ rho @ w.conj().T
    return rho


def char_value(system: WeylSystem, rho: np.ndarray, a: int, b: int) -> complex:
    """Characteristic function Tr(rho W(a, b))."""
    return complex(np.trace(rho @ weyl_operator(system, a, b)))


def char_table(system: WeylSystem, rho: np.ndarray) -> np.ndarray:
    """All characteristic values at once; entry [a, b] is Tr(rho W(a, b))."""
    d = system.dim
    x = np.arange(d)
    fourier = np.exp(2j * np.pi * np.outer(x, x) / d)
    out = np.empty((d, d), dtype=complex)
    for a in range(d):
        diag = rho[(x + a) % d, x]
        twist = np.exp(2j * np.pi * ((system.half * a * x) % d) / d)
        out[a, :] = (diag @ fourier) * twist
    return out


def char_indicator_deviation(
    system: WeylSystem, rho: np.ndarray, exponent1: int, exponent2: int
) -> float:
    """Max departure of the characteristic table from the subgroup indicator."""
    m = system.window
    d = system.dim
    table = char_table(system, rho)
    grid = np.arange(d)
    in1 = (grid % (system.p ** (m + exponent1))) == 0
    in2 = (grid % (system.p ** (m + exponent2))) == 0
    expected = np.outer(in1, in2).astype(complex)
    return float(np.abs(table - expected).max())


def fourier_subgroup_deviation(system: WeylSystem, e1: int, e2: int) -> float:
    """Verify the normalized character sum of p^e1 Z x p^e2 Z is the dual indicator.

    The dual of a product subgroup swaps and reflects the exponents:
    (p^e1 Z x p^e2 Z)-perp = p^(N-e2)Z x p^(N-e1)Z. Returns the max
    absolute deviation over the full phase-space grid.
    """
    d = system.dim
    s1 = np.array(_subgroup_range(system, e1))
    s2 = np.array(_subgroup_range(system, e2))
    z = np.arange(d)
    # D(z, s) = z1*s2 - z2*s1 splits into two separable sums
    col = np.exp(2j * np.pi * (np.outer(z, s2) % d) / d).sum(axis=1) / len(s2)
    row = np.exp(-2j * np.pi * (np.outer(z, s1) % d) / d).sum(axis=1) / len(s1)
    table = np.outer(col, row)
    dual1 = (z % (system.p ** (system.N - e2))) == 0
    dual2 = (z % (system.p ** (system.N - e1))) == 0
    expected = np.outer(dual1, dual2).astype(complex)
    return float(np.abs(table - expected).max())


def validate_density(rho: np.ndarray, psd_tolerance: float = 1e-10) -> None:
    """Raise ValueError unless rho is a density matrix within tolerances."""
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError("density matrix must be square")
    herm = float(np.abs(rho - rho.conj().T).max())
    if herm > 1e-12:
        raise ValueError(f"not hermitian: max asymmetry {herm:.3e}")
    tr = complex(np.trace(rho))
    if abs(tr - 1) > 1e-12:
        raise ValueError(f"trace {tr} differs from 1")
    low = float(np.linalg.eigvalsh(rho).min())
    if low < -psd_tolerance:
        raise ValueError(f"minimum eigenvalue {low:.3e} below -{psd_tolerance}")


def entropy_nats(rho: np.ndarray) -> float:
    """Von Neumann entropy -sum(lam * ln lam) over eigenvalues above 1e-12."""
    validate_density(rho)
    lams = np.linalg.eigvalsh(rho)
    lams = lams[lams > EIGENVALUE_FLOOR]
    return float(-(lams * np.log(lams)).sum())


def exponent_lattice(p: int, e1: int, e2: int) -> Lattice:
    """The exact lattice diag(p^e1, p^e2) * L0 matching a product subgroup."""
    pe1 = Fraction(p**e1) if e1 >= 0 else Fraction(1, p**-e1)
    pe2 = Fraction(p**e2) if e2 >= 0 else Fraction(1, p**-e2)
    return Lattice(Mat2.diagonal(pe1, pe2), p)


def _pivot_exponents(lat: Lattice) -> tuple[int, int]:
    k = lat.canonical
    return int(valuation(k.a, lat.p)), int(valuation(k.d, lat.p))


def _fits_window(system: WeylSystem, lat: Lattice) -> bool:
    m = system.window
    a, b = _pivot_exponents(lat)
    if not (-m <= a <= m and -m <= b <= m):
        return False
    corner = lat.canonical.c
    return corner == 0 or valuation(corner, lat.p) >= -m


@dataclass
class ScanCase:
    """One (transform, noise, input) evaluation of the finite channel."""

    transform: tuple[int, int, int, int]
    noise_exponents: tuple[int, int]
    input_exponents: tuple[int, int]
    trace: float
    min_eigenvalue: float
    spectrum: list[float]
    entropy_nats: float | None
    output_exponent: int
    expected_valid: bool
    psd: bool
    agree: bool

    def to_json_dict(self) -> dict:
        return {
            "transform": list(self.transform),
            "noise": list(self.noise_exponents),
            "input": list(self.input_exponents),
            "trace": self.trace,
            "min_eig": self.min_eigenvalue,
            "spectrum": self.spectrum,
            "entropy_nats": self.entropy_nats,
            "output_exponent": self.output_exponent,
            "expected_predicate": self.expected_valid,
            "psd": self.psd,
            "agree": self.agree,
        }


def _int_matrix(transform: Mat2) -> tuple[int, int, int, int]:
    entries = []
    for q in (transform.a, transform.b, transform.c, transform.d):
        if q.denominator != 1:
            raise ValueError(
                "finite scan needs an integer transform; clear unit denominators first"
            )
        entries.append(int(q))
    return tuple(entries)


def channel_scan(
    system: WeylSystem,
    transform: Mat2,
    noise_exponents: tuple[int, int],
    input_exponents: list[tuple[int, int]] | None = None,
) -> list[ScanCase]:
    """Compare finite channel outputs against the exact admissibility data.

    For each Gaussian input the finite output density is built pointwise,
    pi_out(z) = pi_in(K z) * [z in S_noise], and its spectrum is compared
    with the exact output lattice K^-1 L_in intersect L_noise: positive
    semidefinite iff the exact measure is <= 1, and when it is a state the
    spectrum must be flat at p^(-n) with multiplicity p^n.

    Inputs are centered Gaussians given by window exponent pairs with a
    nonnegative sum. When input_exponents is None the full admissible
    window grid is scanned, silently dropping inputs whose operative
    lattices leave the window; explicitly requested inputs raise
    ValueError instead, since a clipped window would not be faithful.
    """
    p = system.p
    d = system.dim
    m = system.window
    k_int = _int_matrix(transform)
    if transform.det() == 0:
        raise ValueError("transform must be nonsingular")
    a0, b0 = noise_exponents
    noise_lat = exponent_lattice(p, a0, b0)
    if not _fits_window(system, noise_lat):
        raise ValueError(f"noise exponents {noise_exponents} leave the window")
    inverse = transform.inverse()

    if input_exponents is None:
        grid = [
            (g, h)
            for g in range(-m, m + 1)
            for h in range(-m, m + 1)
            if g + h >= 0
        ]
        explicit = False
    else:
        grid = list(input_exponents)
        explicit = True

    # noise indicator over the full phase grid
    zs = np.arange(d)
    noise1 = (zs % (p ** (m + a0))) == 0
    noise2 = (zs % (p ** (m + b0))) == 0
    noise_mask = np.outer(noise1, noise2)
    ka, kb, kc, kd = (v % d for v in k_int)
    z1g, z2g = np.meshgrid(zs, zs, indexing="ij")
    w1 = (ka * z1g + kb * z2g) % d
    w2 = (kc * z1g + kd * z2g) % d

    cases: list[ScanCase] = []
    for g, h in grid:
        if not (-m <= g <= m and -m <= h <= m) or g + h < 0:
            if explicit:
                raise ValueError(f"input exponents {(g, h)} are not an admissible state")
            continue
        input_lat = exponent_lattice(p, g, h)
        pulled = input_lat.transformed(inverse)
        out_lat = pulled & noise_lat
        if not (_fits_window(system, pulled) and _fits_window(system, out_lat)):
            if explicit:
                raise ValueError(
                    f"input {(g, h)} drives the scan outside the window margin"
                )
            continue

        in1 = (zs % (p ** (m + g))) == 0
        in2 = (zs % (p ** (m + h))) == 0
        image_mask = in1[w1] & in2[w2]
        mask = image_mask & noise_mask

        rho = np.zeros((d, d), dtype=complex)
        x = np.arange(d)
        for z1 in np.nonzero(mask.any(axis=1))[0]:
            z2 = np.nonzero(mask[z1])[0]
            exponents = (-np.outer(z2, x) + system.half * int(z1) * z2[:, None]) % d
            rho[x, (x - z1) % d] += np.exp(2j * np.pi * exponents / d).sum(axis=0)
        rho /= d

        spectrum = np.linalg.eigvalsh((rho + rho.conj().T) / 2)
        min_eig = float(spectrum.min())
        trace = float(np.real(np.trace(rho)))
        n_out = int(-valuation(out_lat.measure, p))
        expected_valid = out_lat.measure <= 1
        psd = min_eig >= -PSD_TOLERANCE

        entropy: float | None = None
        if expected_valid:
            flat = np.zeros(d)
            flat[-(p**n_out):] = float(p) ** (-n_out)
            spectrum_ok = bool(np.abs(np.sort(spectrum) - flat).max() < 1e-9)
            agree = psd and spectrum_ok
            if psd:
                lams = spectrum[spectrum > EIGENVALUE_FLOOR]
                entropy = float(-(lams * np.log(lams)).sum())
        else:
            agree = min_eig < -WITNESS_TOLERANCE
        cases.append(
            ScanCase(
                transform=k_int,
                noise_exponents=(a0, b0),
                input_exponents=(g, h),
                trace=trace,
                min_eigenvalue=min_eig,
                spectrum=[float(v) for v in spectrum],
                entropy_nats=entropy,
                output_exponent=n_out,
                expected_valid=expected_valid,
                psd=psd,
                agree=agree,
            )
        )
    return cases


def run_battery(
    system: WeylSystem, seed: int = 0, max_cases: int | None = None
) -> dict:
    """Full deterministic oracle run: CCR, states, Fourier duality, channels.

    Returns a JSON-ready dict; 'all_checks_pass' aggregates every check at
    the standard tolerances (1e-10 algebraic, 1e-9 eigenvalue-based).
    """
    p = system.p
    m = system.window

    if system.dim <= 9:
        ccr_dev, ccr_pairs = ccr_scan(system)
    else:
        ccr_dev, ccr_pairs = ccr_scan(system, sample=500, seed=seed)

    states = []
    states_ok = True
    for e1 in range(-m, m + 1):
        for e2 in range(-m, m + 1):
            if e1 + e2 < 0:
                continue
            n = e1 + e2
            rho = gaussian_density(system, e1, e2)
            lams = np.sort(np.linalg.eigvalsh(rho))
            flat = np.zeros(system.dim)
            flat[-(p**n):] = float(p) ** (-n)
            spectrum_dev = float(np.abs(lams - flat).max())
            ent = entropy_nats(rho)
            expected_ent = n * float(np.log(p))
            char_dev = char_indicator_deviation(system, rho, e1, e2)
            pure = p**n == 1
            ok = (
                spectrum_dev < 1e-10
                and abs(ent - expected_ent) < 1e-9
                and char_dev < 1e-10
                and pure == (n == 0)
            )
            states_ok = states_ok and ok
            states.append(
                {
                    "exponents": [e1, e2],
                    "rank": p**n,
                    "entropy_nats": ent,
                    "expected_entropy_nats": expected_ent,
                    "spectrum_deviation": spectrum_dev,
                    "char_deviation": char_dev,
                    "pure": pure,
                    "ok": ok,
                }
            )

    fourier_dev = 0.0
    for e1 in range(0, system.N + 1):
        for e2 in range(0, system.N + 1):
            fourier_dev = max(fourier_dev, fourier_subgroup_deviation(system, e1, e2))

    transforms = [
        Mat2.identity(),
        Mat2.diagonal(p, 1),
        Mat2.diagonal(1, p),
        Mat2.diagonal(2, 1),
        Mat2.diagonal(p, p),
    ]
    noises = [(0, 0), (-1, 0), (1, -1)]
    channel_cases: list[ScanCase] = []
    for k in transforms:
        for noise in noises:
            channel_cases.extend(channel_scan(system, k, noise))
    if max_cases is not None:
        channel_cases = channel_cases[:max_cases]
    channels_ok = all(case.agree for case in channel_cases)

    all_ok = ccr_dev < 1e-10 and fourier_dev < 1e-10 and states_ok and channels_ok
    return {
        "p": p,
        "N": system.N,
        "ccr": {"pairs": ccr_pairs, "max_deviation": ccr_dev},
        "states": states,
        "fourier_max_deviation": fourier_dev,
        "channel_cases": [case.to_json_dict() for case in channel_cases],
        "all_checks_pass": bool(all_ok),
    }
