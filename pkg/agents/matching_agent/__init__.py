# agents/matching_agent/__init__.py
from .controller import MatchingAgent, run_matching
from .protocol import FixedRate, NodeState, Role, ScheduleParams, accept_round, choose_role, recruit_round
from .schema import MatchingAgentSchema, MatchingAgentState
from .tool import MatchingAgentTool, MatchingOptions, MatchingRun, PairEstimate

__all__ = [
    "FixedRate",
    "MatchingAgent",
    "MatchingAgentSchema",
    "MatchingAgentState",
    "MatchingAgentTool",
    "MatchingOptions",
    "MatchingRun",
    "NodeState",
    "PairEstimate",
    "Role",
    "ScheduleParams",
    "accept_round",
    "choose_role",
    "recruit_round",
    "run_matching",
]
