"""Gaussian states and Gaussian channels over the p-adic phase plane.

A Gaussian state is determined by a lattice L with measure(L) <= 1 and a
phase-space shift alpha; its characteristic function is

    z |-> chi(sympl(alpha, z)) * [z in L],

zero off the lattice. The state is the normalized projector onto the
fixed subspace attached to L, so its von Neumann entropy is the exact
ledger -log(measure(L)) = n * log(p) when measure(L) = p**(-n).

A Gaussian channel is a pair (K, L_noise) acting on characteristic
functions by pi(z) |-> pi(K z) * [z in L_noise]. The pair is admissible
iff |1 - det K|_p * measure(L_noise) <= 1, checked exactly. Applying the
channel to a Gaussian state gives another Gaussian state with lattice
K^-1 L_state intersect L_noise and shift adj(K) * alpha.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InvariantViolation, NotAChannelError, NotAStateError
from .ledger import LogLedger
from .lattice import Lattice, Mat2, Vec2, sympl
from .padic import PhaseQ, additive_character, padic_norm, valuation

__all__ = [
    "ChannelValidity",
    "GaussianChannel",
    "GaussianState",
    "channel_validity",
]


class GaussianState:
    """Gaussian state gamma(L, shift); requires measure(L) <= 1."""

    __slots__ = ("lattice", "shift")

    def __init__(self, lattice: Lattice, shift: Vec2 | None = None):
        if lattice.measure > 1:
            raise NotAStateError(
                f"no Gaussian state for measure {lattice.measure} > 1 (lattice {lattice.canonical})"
            )
        self.lattice = lattice
        self.shift = shift if shift is not None else Vec2.zero()

    @property
    def p(self) -> int:
        return self.lattice.p

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GaussianState):
            return NotImplemented
        return self.lattice == other.lattice and self.shift == other.shift

    def __repr__(self) -> str:
        return f"GaussianState(p={self.p}, lattice='{self.lattice.canonical}', shift='{self.shift}')"

    def char(self, z: Vec2) -> PhaseQ | None:
        """Characteristic function at z: a PhaseQ on the lattice, else None (zero)."""
        if not self.lattice.contains(z):
            return None
        return additive_character(sympl(self.shift, z), self.p)

    def entropy(self) -> LogLedger:
        """Exact entropy ledger n * log(p) where measure = p**(-n)."""
        n = -valuation(self.lattice.measure, self.p)
        return LogLedger.single(self.p, int(n))

    def rank_exponent(self) -> int:
        """The state is 1/rank times a projector of rank p**n; returns n."""
        return int(-valuation(self.lattice.measure, self.p))

    def is_pure(self) -> bool:
        """Purity is exactly self-duality of the lattice."""
        return self.lattice.is_self_dual()

    def unitarily_equivalent(self, other: "GaussianState") -> bool:
        """Equal measures iff the states are unitarily equivalent; shifts never matter."""
        if self.p != other.p:
            raise ValueError(f"prime mismatch: {self.p} vs {other.p}")
        return self.lattice.measure == other.lattice.measure


@dataclass(frozen=True)
class ChannelValidity:
    """Exact pieces of the admissibility inequality |1 - det K|_p * |L| <= 1."""

    one_minus_det_norm: Fraction
    noise_measure: Fraction
    product: Fraction
    ok: bool


def channel_validity(transform: Mat2, noise: Lattice) -> ChannelValidity:
    det = transform.det()
    if det == 0:
        raise ValueError("channel transform must be nonsingular")
    n1 = padic_norm(1 - det, noise.p)
    product = n1 * noise.measure
    return ChannelValidity(n1, noise.measure, product, product <= 1)


class GaussianChannel:
    """Admissible Gaussian channel (transform K, noise lattice)."""

    __slots__ = ("transform", "noise")

    def __init__(self, transform: Mat2, noise: Lattice):
        check = channel_validity(transform, noise)
        if not check.ok:
            raise NotAChannelError(
                "admissibility fails: |1 - det K|_p * measure = "
                f"{check.one_minus_det_norm} * {check.noise_measure} = {check.product} > 1"
            )
        self.transform = transform
        self.noise = noise

    @property
    def p(self) -> int:
        return self.noise.p

    def __repr__(self) -> str:
        return f"GaussianChannel(p={self.p}, transform='{self.transform}', noise='{self.noise.canonical}')"

    def apply(self, state: GaussianState) -> GaussianState:
        """Output state: lattice K^-1 L intersect L_noise, shift adj(K) * alpha.

        The shift rule comes from the exact 2x2 identity
        sympl(alpha, K z) = sympl(adj(K) alpha, z). The output measure
        can never exceed 1 for an admissible channel, so a violation here
        is a logic bug, not bad input.
        """
        if state.p != self.p:
            raise ValueError(f"prime mismatch: state at {state.p}, channel at {self.p}")
        pulled = state.lattice.transformed(self.transform.inverse())
        out = pulled & self.noise
        if out.measure > 1:
            raise InvariantViolation(
                f"admissible channel produced output measure {out.measure} > 1"
            )
        return GaussianState(out, self.transform.adjugate() @ state.shift)

    def entropy_gain(self) -> LogLedger:
        """Exact entropy gain: log of |det K|_p, i.e. exponent -v_p(det K)."""
        v = valuation(self.transform.det(), self.p)
        return LogLedger.single(self.p, -int(v))

    def witness_threshold(self) -> int:
        """Smallest n0 >= 0 such that the shrinking-noise witness works for all n >= n0.

        Four conditions, each monotone in n, must hold for L_n = p**n * L:
        L_n and K^-1 L_n are contained in L and both have measure <= 1
        (so the witness input and output are honest states).
        """
        inv = self.transform.inverse()
        n = 0
        while True:
            ln = self.noise.scaled(n)
            pulled = ln.transformed(inv)
            if (
                ln.issubset(self.noise)
                and pulled.issubset(self.noise)
                and ln.measure <= 1
                and pulled.measure <= 1
            ):
                return n
            n += 1
            if n > 1000:
                raise InvariantViolation("witness threshold scan failed to terminate")

    def entropy_gain_witness(self, n: int) -> LogLedger:
        """Entropy difference realized on the witness state gamma(p**n * L).

        For n at or above the threshold the output lattice is exactly
        K^-1 * (p**n L), so the difference of exact entropies equals the
        closed-form gain; both sides are ledgers and compare exactly.
        """
        if n < self.witness_threshold():
            raise ValueError(f"witness index {n} is below the threshold")
        inp = GaussianState(self.noise.scaled(n))
        out = self.apply(inp)
        expected = inp.lattice.transformed(self.transform.inverse())
        if out.lattice != expected:
            raise InvariantViolation("witness output lattice is not the pulled-back input")
        return out.entropy() - inp.entropy()

    def identity_output_norm(self) -> Fraction:
        """Exact norm of the channel applied to the identity: |det K|_p ** -1.

        Consistency with the closed-form gain (gain = -log of this norm)
        is asserted on every call.
        """
        v = int(valuation(self.transform.det(), self.p))
        norm = Fraction(self.p**v) if v >= 0 else Fraction(1, self.p ** (-v))
        if LogLedger.single(self.p, -v) != self.entropy_gain():
            raise InvariantViolation("identity-output norm disagrees with entropy gain")
        return norm
