# agents/naf_agent/tool.py
import math
from dataclasses import dataclass, field

import numpy as np

from agents.matching_agent.protocol import Role, RoleFilter
from core import BaseTool, auto_wrap_error
from core.errors import ConfigError
from network.model import Graph, Matching, NafAssignment, NafLoad, naf_load
from radio.ledger import EnergyLedger


@dataclass(frozen=True)
class NafRunConfig:
    """
    k: number of restricted iterations after the first matching; when omitted
       it is derived from the load hint as ceil(2 * L * ln n)
    load_hint: L, the load of some NAF of the graph
    """
    k: int | None = None
    load_hint: int | None = None

    def __post_init__(self):
        if self.k is None and self.load_hint is None:
            raise ConfigError("NAF run needs either k or a load hint L")
        if self.k is not None and self.k < 0:
            raise ConfigError(f"k must be >= 0, got {self.k}")
        if self.load_hint is not None and self.load_hint < 1:
            raise ConfigError(f"L must be >= 1, got {self.load_hint}")

    def resolve_k(self, n: int) -> int:
        if self.k is not None:
            return self.k
        return math.ceil(2 * self.load_hint * math.log(n)) if n > 1 else 0


@dataclass
class NafRun:
    assignment: NafAssignment
    load: NafLoad
    k: int
    coverage_curve: list[int]
    matching_sizes: list[int]
    first_full_iteration: int | None
    unassignable: list[int]
    first_matching_maximal: bool
    ledger: EnergyLedger
    timesteps: int
    energy_ok: bool = True
    notes: list[str] = field(default_factory=list)

    @property
    def coverage_fraction(self) -> float:
        n = self.assignment.n
        return (len(self.assignment.assigned()) / n) if n else 1.0

    @property
    def load_bound_ok(self) -> bool:
        return self.load.load <= self.k + 1


def restrict_roles(assigned: np.ndarray) -> RoleFilter:
    """
    Role restriction of the iterations after the first: only unassigned nodes
    recruit and only assigned nodes accept; the disallowed role becomes Asleep.
    """
    assigned = np.asarray(assigned, dtype=bool).copy()

    def apply(roles: np.ndarray) -> np.ndarray:
        roles = roles.copy()
        roles[(~assigned) & (roles == Role.ACCEPTER)] = Role.ASLEEP
        roles[assigned & (roles == Role.RECRUITER)] = Role.ASLEEP
        return roles

    return apply


class NafAgentTool(BaseTool):
    """Bookkeeping of the neighbor assignment built from repeated matchings."""

    @auto_wrap_error
    def initial_state(self, graph: Graph) -> tuple[np.ndarray, np.ndarray, list[int]]:
        """Empty assignment plus the isolated vertices, which can never be assigned."""
        isolated = graph.isolated_vertices()
        if isolated:
            self.logger.warning("isolated vertices cannot be assigned: %s", isolated)
        return (np.zeros(graph.n, dtype=bool), np.full(graph.n, -1, dtype=np.int64), isolated)

    @auto_wrap_error
    def apply_matching(self, assigned: np.ndarray, target: np.ndarray,
                       matching: Matching) -> tuple[np.ndarray, np.ndarray]:
        """Mark both endpoints of every matched edge assigned and point them at each other."""
        assigned = assigned.copy()
        target = target.copy()
        for u, v in matching:
            target[u] = v
            target[v] = u
            assigned[u] = True
            assigned[v] = True
        return assigned, target

    @auto_wrap_error
    def no_unassigned_edge(self, graph: Graph, assigned: np.ndarray) -> bool:
        return all(assigned[u] or assigned[v] for u, v in graph.edges)

    @auto_wrap_error
    def finish(self, graph: Graph, target: np.ndarray) -> tuple[NafAssignment, NafLoad]:
        assignment = NafAssignment.from_array(target)
        return assignment, naf_load(graph, assignment)
