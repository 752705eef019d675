"""Agents running as child processes, driven through the line protocol"""

import queue
import subprocess
import threading
from typing import Optional

from dialogtest.agents.base import CLOSE_GRACE_PERIOD, AgentHandle, AgentSpec
from dialogtest.agents.protocol import (
    AGENT_PREFIX,
    BYE,
    QUERY,
    READY,
    STATE_PREFIX,
    USER_PREFIX,
    frame,
    parse_state,
    unframe,
)
from dialogtest.errors import (
    HandshakeTimeout,
    LaunchFailure,
    ProtocolViolation,
    ResponseTimeout,
    SessionClosed,
)

_EOF = None


class SubprocessHandle(AgentHandle):
    """A session with an agent process

    Standard output is read by a thread feeding a queue, so that each read
    can time out; standard error is forwarded to the logger.
    """

    def __init__(self, spec: AgentSpec, max_turns: int, session_id: str):
        super().__init__(spec, max_turns, session_id)
        self.timeout = spec.response_timeout
        self._lines: "queue.Queue[Optional[str]]" = queue.Queue()

        try:
            self.process = subprocess.Popen(
                list(spec.entry),
                stdin=subprocess.PIPE,
                stdout=subprocess.PIPE,
                stderr=subprocess.PIPE,
                encoding="utf-8",
                bufsize=1,
            )
        except (OSError, ValueError) as e:
            raise LaunchFailure(f"{spec.entry[0]}: {e}")

        self.logger.debug(
            "%s: started %s (pid %d)", session_id, spec.entry, self.process.pid
        )
        self._threads = [
            threading.Thread(target=self._read_stdout, daemon=True),
            threading.Thread(target=self._read_stderr, daemon=True),
        ]
        for thread in self._threads:
            thread.start()

        try:
            self._handshake()
        except Exception:
            self.closed = True
            self._terminate()
            raise

    def _read_stdout(self):
        try:
            for line in self.process.stdout:
                self._lines.put(line.rstrip("\r\n"))
        except (OSError, ValueError):
            pass
        finally:
            self._lines.put(_EOF)

    def _read_stderr(self):
        try:
            for line in self.process.stderr:
                self.logger.debug("%s [stderr] %s", self.session_id, line.rstrip())
        except (OSError, ValueError):
            pass

    def _handshake(self):
        try:
            line = self._lines.get(timeout=self.timeout)
        except queue.Empty:
            raise HandshakeTimeout(self.timeout) from None
        if line is _EOF:
            code = self.process.wait()
            raise LaunchFailure(f"the agent exited with code {code} before READY")
        if line != READY:
            raise ProtocolViolation(line)
        self.logger.debug("%s: agent ready", self.session_id)

    def _readline(self) -> str:
        try:
            line = self._lines.get(timeout=self.timeout)
        except queue.Empty:
            # A late answer would be taken for the next one
            self.close()
            raise ResponseTimeout(self.timeout) from None
        if line is _EOF:
            self.close()
            raise SessionClosed(f"{self.session_id}: the agent exited")
        return line

    def _write(self, line: str):
        try:
            self.process.stdin.write(line + "\n")
            self.process.stdin.flush()
        except (OSError, ValueError):
            self.close()
            raise SessionClosed(f"{self.session_id}: the agent closed its input")

    def _request(self, line: str, prefix: str) -> str:
        self._write(line)
        answer = self._readline()
        payload = unframe(answer, prefix)
        if payload is None:
            raise ProtocolViolation(answer)
        return payload

    def _respond(self, text: str) -> str:
        return self._request(frame(USER_PREFIX, text), AGENT_PREFIX)

    def _state(self):
        return parse_state(self._request(QUERY, STATE_PREFIX))

    def _terminate(self):
        process = self.process
        if process.poll() is None:
            self.logger.warning(
                "%s: agent did not exit, terminating it", self.session_id
            )
            process.terminate()
            try:
                process.wait(CLOSE_GRACE_PERIOD)
            except subprocess.TimeoutExpired:
                process.kill()
                process.wait()
        try:
            process.stdin.close()
        except OSError:
            pass
        # The readers stop at end of file, once the process is gone
        for thread in self._threads:
            thread.join(CLOSE_GRACE_PERIOD)

    def _close(self):
        try:
            self.process.stdin.write(BYE + "\n")
            self.process.stdin.flush()
        except (OSError, ValueError):
            pass
        try:
            self.process.wait(CLOSE_GRACE_PERIOD)
        except subprocess.TimeoutExpired:
            pass
        try:
            self._terminate()
        except OSError as e:
            self.logger.error(
                "%s: could not terminate the agent: %s", self.session_id, e
            )
        self.logger.debug(
            "%s: agent exited with code %s", self.session_id, self.process.returncode
        )
