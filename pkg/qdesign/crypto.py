"""
Dihedral Diffie-Hellman

A toy key exchange inside the rotation subgroup of the dihedral group D_2N with
N = q - 1, a seeded SplitMix64 generator so transcripts replay exactly, and a
brute-force discrete logarithm. This is a teaching simulation and is not secure.
"""

import logging
from dataclasses import dataclass

from qdesign.config import Config
from qdesign.errors import BadParameters, BudgetExceeded, DegenerateGroup, NotInCyclicSubgroup, VerificationMismatch
from qdesign.field import field_from_order
from qdesign.groups import GLElem

logger = logging.getLogger(__name__)

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


class SplitMix64:
    """64-bit SplitMix generator: state += golden gamma, then the standard mixer."""

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN_GAMMA) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def randrange(self, low: int, high: int) -> int:
        """Uniform integer in [low, high) by rejection sampling."""
        span = high - low
        if span <= 0:
            raise BadParameters(f"Empty range [{low}, {high})")
        limit = (1 << 64) - ((1 << 64) % span)
        while True:
            x = self.next_u64()
            if x < limit:
                return low + x % span


@dataclass(frozen=True)
class DihedralElem:
    """tau^r sigma^s in D_2N."""

    N: int
    r: int = 0
    s: int = 0

    def __post_init__(self):
        if self.N < 1 or not 0 <= self.r < self.N or self.s not in (0, 1):
            raise BadParameters(f"Invalid dihedral element ({self.r}, {self.s}) of D_{2 * self.N}")

    def one(self) -> "DihedralElem":
        return DihedralElem(self.N, 0, 0)

    @property
    def is_rotation(self) -> bool:
        return self.s == 0

    def __mul__(self, other: "DihedralElem") -> "DihedralElem":
        if other.N != self.N:
            raise BadParameters(f"D_{2 * self.N} vs D_{2 * other.N}")
        sign = -1 if self.s else 1
        return DihedralElem(self.N, (self.r + sign * other.r) % self.N, self.s ^ other.s)

    def inverse(self) -> "DihedralElem":
        if self.s:
            return self
        return DihedralElem(self.N, (-self.r) % self.N, 0)

    def to_matrix(self, tau: GLElem, sigma: GLElem) -> GLElem:
        """Image under the embedding tau -> tau, sigma -> sigma."""
        return tau.power(self.r) * sigma.power(self.s)

    def __repr__(self) -> str:
        return f"tau^{self.r}" + (" sigma" if self.s else "")


def dihedral_pow(g: DihedralElem, m: int) -> DihedralElem:
    if m < 0:
        raise BadParameters(f"Exponent must be >= 0, got {m}")
    result = g.one()
    base = g
    while m:
        if m & 1:
            result = result * base
        base = base * base
        m >>= 1
    return result


@dataclass(frozen=True)
class DHTranscript:
    """Everything said and computed during one exchange."""

    q: int
    N: int
    seed: int | None
    d: int
    e: int
    D: DihedralElem
    E: DihedralElem
    shared_p1: DihedralElem
    shared_p2: DihedralElem

    @property
    def tau(self) -> DihedralElem:
        return DihedralElem(self.N, 1 % self.N, 0)

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "N": self.N,
            "seed": self.seed,
            "d": self.d,
            "e": self.e,
            "D": self.D.r,
            "E": self.E.r,
            "shared": self.shared_p1.r,
            "agree": self.shared_p1 == self.shared_p2,
        }


def dh_exchange(q: int, seed: int | None = 0, d: int | None = None, e: int | None = None) -> DHTranscript:
    """Run the exchange with public base tau of order N = q - 1.

    Secrets not given explicitly are drawn uniformly from (0, N) with SplitMix64(seed).
    """
    field_from_order(q)
    N = q - 1
    if N <= 2:
        raise DegenerateGroup(f"N = q - 1 = {N} leaves no secret exponents")
    rng = SplitMix64(seed or 0)
    d = d if d is not None else rng.randrange(1, N)
    e = e if e is not None else rng.randrange(1, N)
    for name, value in (("d", d), ("e", e)):
        if not 0 < value < N:
            raise BadParameters(f"Secret {name}={value} outside (0, {N})")

    tau = DihedralElem(N, 1, 0)
    D = dihedral_pow(tau, d)
    E = dihedral_pow(tau, e)
    shared_p1 = dihedral_pow(E, d)
    shared_p2 = dihedral_pow(D, e)
    if shared_p1 != shared_p2:
        raise VerificationMismatch("Parties disagree on the shared value")
    logger.info(f"DH over D_{2 * N}: shared tau^{shared_p1.r}")
    return DHTranscript(q, N, seed, d, e, D, E, shared_p1, shared_p2)


def dlp_bruteforce(base: DihedralElem, target: DihedralElem, budget: int | None = None) -> int:
    """Smallest m >= 0 with base^m = target."""
    if not base.is_rotation:
        raise BadParameters("Discrete log base must be a rotation")
    budget = budget or Config.DLP_BUDGET
    if base.N > budget:
        raise BudgetExceeded(f"Rotation order {base.N} exceeds {budget}")
    if target.N != base.N or not target.is_rotation:
        raise NotInCyclicSubgroup(f"{target} is not a power of {base}")
    current = base.one()
    for m in range(base.N):
        if current == target:
            return m
        current = current * base
    raise NotInCyclicSubgroup(f"{target} is not a power of {base}")


def eavesdrop(transcript: DHTranscript) -> DihedralElem:
    """Recover the shared value from D and E alone."""
    d = dlp_bruteforce(transcript.tau, transcript.D)
    return dihedral_pow(transcript.E, d)
