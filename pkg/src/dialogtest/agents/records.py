import threading
from typing import Iterator, List, Tuple

from attrs import field, frozen, validators

from dialogtest.text.utterance import Utterance


@frozen
class Exchange:
    """One user turn and the agent's answer"""

    user: Utterance
    agent: Utterance

    latency: float = field(validator=validators.ge(0.0))
    """Seconds between sending the user turn and receiving the answer"""

    index: int = field(validator=validators.ge(0))
    """Turn number, starting at 0"""


class Transcript:
    """The append-only record of a session"""

    def __init__(self, session_id: str):
        self.session_id = session_id
        self._exchanges: List[Exchange] = []
        self._lock = threading.Lock()

    def append(self, user: Utterance, agent: Utterance, latency: float) -> Exchange:
        with self._lock:
            exchange = Exchange(user, agent, max(latency, 0.0), len(self._exchanges))
            self._exchanges.append(exchange)
        return exchange

    @property
    def exchanges(self) -> Tuple[Exchange, ...]:
        return tuple(self._exchanges)

    def __len__(self):
        return len(self._exchanges)

    def __iter__(self) -> Iterator[Exchange]:
        return iter(self.exchanges)

    def __getitem__(self, ix: int) -> Exchange:
        return self._exchanges[ix]

    @property
    def last_response(self) -> Utterance:
        return self._exchanges[-1].agent

    def __repr__(self):
        return f"Transcript({self.session_id!r}, {len(self)} exchanges)"
