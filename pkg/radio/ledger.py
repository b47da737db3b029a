# radio/ledger.py
"""Round clock, energy accounting and the optional action trace."""

from dataclasses import dataclass, field

import numpy as np

from radio.messages import Action, Message

STEPS_PER_ROUND = 3


@dataclass(frozen=True)
class RoundClock:
    """Round t spans timesteps 3t-2, 3t-1, 3t."""

    @staticmethod
    def round_of(step: int) -> int:
        return (step + STEPS_PER_ROUND - 1) // STEPS_PER_ROUND

    @staticmethod
    def phase_of(step: int) -> int:
        return (step - 1) % STEPS_PER_ROUND + 1

    @staticmethod
    def steps(t: int) -> tuple[int, int, int]:
        return (3 * t - 2, 3 * t - 1, 3 * t)


class EnergyLedger:
    """
    Energy per node: one unit for every timestep spent sending or listening.

    participation[v] lists the rounds in which v spent any energy.
    """

    def __init__(self, n: int):
        self.n = n
        self.energy = np.zeros(n, dtype=np.int64)
        self.max_round_energy = np.zeros(n, dtype=np.int64)
        self.participation: list[list[int]] = [[] for _ in range(n)]
        self._round_energy: dict[int, int] = {}

    def charge(self, step: int, nodes) -> None:
        for v in nodes:
            self.energy[v] += 1
            self._round_energy[v] = self._round_energy.get(v, 0) + 1

    def close_step(self, step: int) -> None:
        if RoundClock.phase_of(step) != STEPS_PER_ROUND:
            return
        t = RoundClock.round_of(step)
        for v, spent in self._round_energy.items():
            self.participation[v].append(t)
            if spent > self.max_round_energy[v]:
                self.max_round_energy[v] = spent
        self._round_energy.clear()

    def participation_counts(self) -> np.ndarray:
        return np.array([len(rounds) for rounds in self.participation], dtype=np.int64)

    def total(self) -> int:
        return int(self.energy.sum())

    def max_energy(self) -> int:
        return int(self.energy.max()) if self.n else 0

    def absorb(self, other: "EnergyLedger", round_offset: int = 0) -> None:
        """Add another run's ledger into this one (rounds shifted by round_offset)."""
        self.energy += other.energy
        np.maximum(self.max_round_energy, other.max_round_energy, out=self.max_round_energy)
        for v in range(self.n):
            self.participation[v].extend(t + round_offset for t in other.participation[v])


@dataclass
class TraceEntry:
    step: int
    actions: dict[int, Action]
    # listener -> (sender, message)
    receptions: dict[int, tuple[int, Message]]


@dataclass
class ActionTrace:
    """
    Non-idle timesteps of a run, up to `cap` entries.

    Timesteps where every node sleeps are not stored.
    """
    cap: int
    entries: list[TraceEntry] = field(default_factory=list)
    truncated: bool = False

    def record(self, step: int, actions: dict[int, Action],
               receptions: dict[int, tuple[int, Message]]) -> None:
        if not actions:
            return
        if len(self.entries) >= self.cap:
            self.truncated = True
            return
        self.entries.append(TraceEntry(step, dict(actions), dict(receptions)))

    def energy_actions(self) -> int:
        return sum(
            1 for entry in self.entries for a in entry.actions.values() if a.costs_energy
        )

    def at(self, step: int) -> TraceEntry | None:
        for entry in self.entries:
            if entry.step == step:
                return entry
        return None
