"""Double factorial equations, explicit prime bounds and abc triples."""

from ._core import (
    AbcTriple,
    BlockReport,
    BoundCheckResult,
    Classification,
    DflError,
    EquationInstance,
    HypothesisViolation,
    InvalidArgument,
    NotASolution,
    OutOfRange,
    ParityMode,
    PrimeTable,
    ResourceLimit,
    SolutionRecord,
    analyze_block,
    check_identity,
    classify,
    double_factorial,
    factorize,
    generate_trivial_even,
    generate_trivial_odd,
    largest_prime_factor,
    make_triple,
    proof_triple,
    radical,
    search,
    sieve_primes,
    theorem24_scan,
    theta,
    verify_theta_bound,
)

__all__ = [name for name in dir() if not name.startswith("_")]
