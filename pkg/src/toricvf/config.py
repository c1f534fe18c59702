from dataclasses import dataclass


@dataclass(frozen=True)
class Config:
    """Tunable bounds shared by the engines and the CLI."""

    max_rank: int = 8
    # oracle sweeps: semigroup points with sum of ray pairings <= degree_bound
    degree_bound: int = 12
    # fallback root scan box; None means 10 * rank
    root_box: int | None = None
    # canonicalising box scans are skipped above this many lattice points
    scan_cap: int = 250_000


DEFAULT = Config()
