"""Lockstep all-to-all network with per-pair bandwidth accounting."""

from __future__ import annotations

import hashlib
import math
from collections import defaultdict
from dataclasses import dataclass, field

WORD_BITS = 64


class BandwidthViolation(RuntimeError):
    """A pair needed more rounds than the protocol scheduled, or a round carried more than B words."""


def words_of(value) -> int:
    """Words occupied by one matrix entry: ceil(bits / 64), at least one."""
    return max(1, math.ceil(abs(int(value)).bit_length() / WORD_BITS))


@dataclass
class PhaseStats:
    name: str
    rounds: int
    max_entries_per_pair: int
    max_words_per_pair: int
    words: int
    messages: int


@dataclass
class CliqueNetwork:
    """n vertices; each ordered pair may carry ``bandwidth`` words per round.

    Senders queue values with :meth:`send`; :meth:`deliver` then runs exactly
    the number of rounds the protocol scheduled, streaming every pair's words
    at most ``bandwidth`` per round, and only afterwards fills the inboxes.
    Messages a vertex sends to itself are local and free.
    """

    n: int
    bandwidth: int = 1
    round: int = 0
    messages: int = 0
    words: int = 0
    transcript: list[tuple[int, int, int, int]] = field(default_factory=list)
    phases: list[PhaseStats] = field(default_factory=list)

    def __post_init__(self):
        if self.n < 1 or self.bandwidth < 1:
            raise ValueError("need n >= 1 and bandwidth >= 1")
        self._outbox: dict[tuple[int, int], list] = defaultdict(list)
        self.inbox: list[dict] = [defaultdict(list) for _ in range(self.n)]

    def send(self, src: int, dst: int, tag, values) -> None:
        if not (0 <= src < self.n and 0 <= dst < self.n):
            raise ValueError(f"bad endpoint {src}->{dst}")
        self._outbox[(src, dst)].append((tag, list(values)))

    def pending_words(self) -> dict[tuple[int, int], int]:
        return {
            pair: sum(words_of(v) for _, vals in msgs for v in vals)
            for pair, msgs in self._outbox.items()
            if pair[0] != pair[1]
        }

    def deliver(self, rounds: int, phase: str = "") -> PhaseStats:
        load = self.pending_words()
        entries = {
            pair: sum(len(vals) for _, vals in msgs)
            for pair, msgs in self._outbox.items()
            if pair[0] != pair[1]
        }
        for pair, w in load.items():
            if w > rounds * self.bandwidth:
                raise BandwidthViolation(
                    f"{phase}: pair {pair} needs {w} words but only {rounds} rounds of {self.bandwidth} were scheduled"
                )
        remaining = dict(sorted(load.items()))
        n_msgs = 0
        for r in range(rounds):
            for (src, dst), left in remaining.items():
                if left <= 0:
                    continue
                chunk = min(left, self.bandwidth)
                if chunk > self.bandwidth:
                    raise BandwidthViolation(f"round {self.round + r}: {chunk} words on {src}->{dst}")
                remaining[(src, dst)] = left - chunk
                self.transcript.append((self.round + r, src, dst, chunk))
                n_msgs += 1
        for (src, dst), msgs in sorted(self._outbox.items()):
            for tag, vals in msgs:
                self.inbox[dst][tag].append((src, vals))
        self._outbox.clear()
        self.round += rounds
        self.messages += n_msgs
        total = sum(load.values())
        self.words += total
        stats = PhaseStats(
            phase,
            rounds,
            max(entries.values(), default=0),
            max(load.values(), default=0),
            total,
            n_msgs,
        )
        self.phases.append(stats)
        return stats

    def take(self, vertex: int, tag) -> list:
        return self.inbox[vertex].pop(tag, [])

    def transcript_lines(self) -> list[str]:
        return [f"{r} {s} {d} {w}" for r, s, d, w in self.transcript]

    def transcript_hash(self) -> str:
        h = hashlib.sha256()
        for line in self.transcript_lines():
            h.update(line.encode())
            h.update(b"\n")
        return h.hexdigest()

    def max_words_per_pair_round(self) -> int:
        return max((w for *_, w in self.transcript), default=0)
