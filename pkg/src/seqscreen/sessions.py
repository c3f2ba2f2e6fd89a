"""In-memory what-if sessions with replayable state.

A session is a scenario document plus the posterior trace of its current
sequence.  Every mutation (append, undo) replays the fold from scratch,
so the stored trace is always exactly what a fresh fold of the stored
sequence would produce -- state is disposable by construction.  The store
can snapshot itself to a single JSON journal and reload it on start.
"""

from __future__ import annotations

import json
import secrets
import threading
from dataclasses import dataclass
from datetime import datetime, timezone
from typing import Any

from .errors import ValidationError
from .scenario import ScenarioDocument, parse_scenario
from .sequence import TestResult, TestSequence, posterior_fold


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="microseconds")


def _fold_state(doc: ScenarioDocument) -> dict[str, Any]:
    """Posterior summary of a scenario's current sequence (prior when empty)."""
    outcomes = doc.outcomes()
    if not outcomes:
        phi = doc.pretest_probability.value
        return {
            "posterior_disease": phi,
            "posterior_no_disease": 1.0 - phi,
            "formula_used": None,
            "trace": [],
        }
    report = posterior_fold(TestSequence(outcomes), doc.pretest_probability)
    return {
        "posterior_disease": report.posterior_disease.value,
        "posterior_no_disease": report.posterior_no_disease.value,
        "formula_used": report.formula_used.value,
        "trace": [
            {"outcome": label, "posterior_disease": p.value}
            for label, p in report.per_step_trace
        ],
    }


@dataclass
class Session:
    """One live session; mutations are serialized by ``lock``."""

    session_id: str
    scenario: ScenarioDocument
    created: str
    updated: str

    def __post_init__(self):
        self.lock = threading.Lock()

    def view(self) -> dict[str, Any]:
        state = _fold_state(self.scenario)
        return {
            "session_id": self.session_id,
            "created": self.created,
            "updated": self.updated,
            "scenario": self.scenario.to_dict(),
            "posterior_trace": state["trace"],
            "posterior_disease": state["posterior_disease"],
            "posterior_no_disease": state["posterior_no_disease"],
            "formula_used": state["formula_used"],
        }


class UnknownSession(KeyError):
    pass


class SessionStore:
    """Thread-safe registry of sessions with optional JSON snapshotting."""

    def __init__(self):
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()

    def create(self, scenario: ScenarioDocument) -> Session:
        # Validate the initial sequence folds cleanly before registering.
        _fold_state(scenario)
        stamp = _now()
        session = Session(
            session_id=secrets.token_urlsafe(16),
            scenario=scenario,
            created=stamp,
            updated=stamp,
        )
        with self._lock:
            self._sessions[session.session_id] = session
        return session

    def get(self, session_id: str) -> Session:
        with self._lock:
            try:
                return self._sessions[session_id]
            except KeyError:
                raise UnknownSession(session_id) from None

    def append_outcome(self, session_id: str, name: str, result: TestResult) -> dict[str, Any]:
        """Append one outcome; returns the updated posterior report.

        The fold is replayed on the extended sequence before the session
        is touched, so a conflicting outcome leaves the session unchanged.
        """
        session = self.get(session_id)
        with session.lock:
            extended = session.scenario.with_outcome(name, result)
            state = _fold_state(extended)
            session.scenario = extended
            session.updated = _now()
            return state

    def undo_last(self, session_id: str) -> dict[str, Any]:
        session = self.get(session_id)
        with session.lock:
            shortened = session.scenario.without_last_outcome()
            state = _fold_state(shortened)
            session.scenario = shortened
            session.updated = _now()
            return state

    def whatif(self, session_id: str, name: str, result: TestResult) -> dict[str, Any]:
        """Posterior if the outcome were appended; never mutates the session."""
        session = self.get(session_id)
        with session.lock:
            hypothetical = session.scenario.with_outcome(name, result)
            return _fold_state(hypothetical)

    def save(self, path: str) -> None:
        with self._lock:
            sessions = list(self._sessions.values())
        journal = {
            "sessions": [
                {
                    "session_id": s.session_id,
                    "created": s.created,
                    "updated": s.updated,
                    "scenario": s.scenario.to_dict(),
                }
                for s in sessions
            ]
        }
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(journal, fh, indent=2)
            fh.write("\n")

    def load(self, path: str) -> int:
        """Restore sessions from a journal; returns how many were loaded."""
        with open(path, encoding="utf-8") as fh:
            journal = json.load(fh)
        entries = journal.get("sessions", [])
        if not isinstance(entries, list):
            raise ValidationError("sessions: expected a list in the journal")
        count = 0
        for entry in entries:
            scenario = parse_scenario(entry["scenario"])
            session = Session(
                session_id=entry["session_id"],
                scenario=scenario,
                created=entry["created"],
                updated=entry["updated"],
            )
            with self._lock:
                self._sessions[session.session_id] = session
            count += 1
        return count
