"""A scriptable agent speaking the line protocol, used by the tests"""

import sys
import time

import click

from dialogtest.agents.protocol import (
    AGENT_PREFIX,
    BYE,
    QUERY,
    READY,
    STATE_PREFIX,
    USER_PREFIX,
    frame,
    serialize_state,
    unframe,
)
from dialogtest.text.utterance import strip_wake

MODES = [
    "echo",
    "clock",
    "strip-wake",
    "slow-ready",
    "bad-framing",
    "bad-state",
    "hang",
    "crash",
]


def send(line: str):
    sys.stdout.write(line + "\n")
    sys.stdout.flush()


def clock_answer(text: str, state: dict) -> str:
    if "alarm" in text.lower() and "six" in text.lower():
        state["alarm"] = {"time": "06:00", "set": True}
        return "Your alarm is set for six a.m."
    return "Sorry, I did not understand"


@click.command()
@click.option("--mode", type=click.Choice(MODES), default="echo")
@click.option("--delay", type=float, default=0.0, help="Seconds to wait before READY")
@click.option("--wake-phrase", default="OK Google")
def cli(mode: str, delay: float, wake_phrase: str):
    if mode == "crash":
        sys.exit(3)
    if delay or mode == "slow-ready":
        time.sleep(delay or 30)
    send(READY)

    state: dict = {}
    for line in sys.stdin:
        line = line.rstrip("\n")
        if line == BYE:
            if mode == "hang":
                continue
            break

        if line == QUERY:
            if mode == "bad-state":
                send(frame(STATE_PREFIX, "alarm=1;alarm.time=2"))
            else:
                send(frame(STATE_PREFIX, serialize_state(state)))
            continue

        text = unframe(line, USER_PREFIX)
        if text is None:
            sys.stderr.write(f"unexpected line {line!r}\n")
            continue

        if mode == "clock":
            answer = clock_answer(text, state)
        elif mode == "strip-wake":
            answer = strip_wake(text, wake_phrase).raw
        else:
            answer = text
        send(frame("X" if mode == "bad-framing" else AGENT_PREFIX, answer))

    if mode == "hang":
        while True:
            time.sleep(1)


if __name__ == "__main__":
    cli()
