# radio/__init__.py
from .engine import RadioModel, Reception, RunResult, deliver, run
from .ledger import ActionTrace, EnergyLedger, RoundClock
from .messages import LISTEN, SLEEP, Action, ActionKind, Message, Pair, Solo, send
from .protocol import Protocol, ScriptedProtocol
from .streams import NodeStreams

__all__ = [
    "LISTEN",
    "SLEEP",
    "Action",
    "ActionKind",
    "ActionTrace",
    "EnergyLedger",
    "Message",
    "NodeStreams",
    "Pair",
    "Protocol",
    "RadioModel",
    "Reception",
    "RoundClock",
    "RunResult",
    "ScriptedProtocol",
    "Solo",
    "deliver",
    "run",
]
