# radio/messages.py
"""
Messages and actions of the radio model.

Each node picks exactly one action per timestep: Send(message), Listen or
Sleep. A message is either Solo(id) or Pair(id, id); its encoded size is two
tag bits plus one id field per carried id.
"""

from dataclasses import dataclass
from enum import Enum

from core.errors import MessageSizeError

TAG_BITS = 2


@dataclass(frozen=True, slots=True)
class Solo:
    sender: int


@dataclass(frozen=True, slots=True)
class Pair:
    first: int
    second: int


Message = Solo | Pair


class ActionKind(Enum):
    SEND = "send"
    LISTEN = "listen"
    SLEEP = "sleep"


@dataclass(frozen=True, slots=True)
class Action:
    kind: ActionKind
    message: Message | None = None

    @property
    def costs_energy(self) -> bool:
        return self.kind is not ActionKind.SLEEP


LISTEN = Action(ActionKind.LISTEN)
SLEEP = Action(ActionKind.SLEEP)


def send(message: Message) -> Action:
    return Action(ActionKind.SEND, message)


def message_ids(message: Message) -> tuple[int, ...]:
    if isinstance(message, Solo):
        return (message.sender,)
    return (message.first, message.second)


def message_bits(message: Message, width: int) -> int:
    return TAG_BITS + width * len(message_ids(message))


def check_message(message: object, width: int) -> None:
    """
    Enforce the O(log n) message regime: at most two ids of `width` bits each.

    Payloads are Solo or Pair only, so a message that passes carries at most
    2 * width + TAG_BITS bits.

    Raises:
        MessageSizeError: unknown payload type, or an id that does not fit the width
    """
    if not isinstance(message, (Solo, Pair)):
        raise MessageSizeError(f"Unsupported payload {message!r}")
    limit = 1 << width
    for value in message_ids(message):
        if not isinstance(value, int) or not 0 <= value < limit:
            raise MessageSizeError(
                f"Id {value!r} in {message!r} does not fit in {width} bits"
            )
