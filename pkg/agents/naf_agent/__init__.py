# agents/naf_agent/__init__.py
from .controller import NafAgent, run_naf
from .schema import NafAgentSchema, NafAgentState
from .tool import NafAgentTool, NafRun, NafRunConfig, restrict_roles

__all__ = [
    "NafAgent",
    "NafAgentSchema",
    "NafAgentState",
    "NafAgentTool",
    "NafRun",
    "NafRunConfig",
    "restrict_roles",
    "run_naf",
]
