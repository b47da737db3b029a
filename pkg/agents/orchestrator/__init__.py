# agents/orchestrator/__init__.py
from .controller import Orchestrator, run_batch, run_sweep
from .schema import OrchestratorSchema, OrchestratorState
from .tool import OrchestratorTool, RunConfig, TrialSpec, execute_trial, spawn_trial_seeds

__all__ = [
    "Orchestrator",
    "OrchestratorSchema",
    "OrchestratorState",
    "OrchestratorTool",
    "RunConfig",
    "TrialSpec",
    "execute_trial",
    "run_batch",
    "run_sweep",
    "spawn_trial_seeds",
]
