"""Shared fixtures: primed mock LLMs and fully mocked service managers."""

from __future__ import annotations

import pytest

from inkspire.analogy import PromptLibrary
from inkspire.backends import MockLLM, mock_suite
from inkspire.service import ServiceConfig, SessionManager

CAR_PRINCIPLES = (
    "Key design principles for car design include aerodynamic exteriors for "
    "fuel efficiency and performance, balanced proportions, and a strong "
    "visual identity expressed through stance and surface language."
)
CAR_PROTECTIVE_REPLY = "1. tortoise | nature\n2. armadillo | nature\n3. armor | fashion"
TORTOISE_BRANCH_REPLY = "tank | architecture\nbackpack | fashion\ntreasure chest | architecture"


@pytest.fixture
def prompt_library() -> PromptLibrary:
    return PromptLibrary.load()


@pytest.fixture
def primed_llm(prompt_library: PromptLibrary) -> MockLLM:
    """Mock LLM primed for the car/protective chain and a tortoise branch."""
    llm = MockLLM()
    step1 = prompt_library.design_principles("car")
    llm.register(step1, CAR_PRINCIPLES)
    llm.register(
        prompt_library.inspirations_with_categories("car", "protective", CAR_PRINCIPLES),
        CAR_PROTECTIVE_REPLY,
    )
    llm.register(
        prompt_library.inspirations_with_categories("car", "tortoise", CAR_PRINCIPLES),
        TORTOISE_BRANCH_REPLY,
    )
    return llm


@pytest.fixture
def manager(primed_llm: MockLLM):
    config = ServiceConfig(seed=20_240_601)
    mgr = SessionManager(config, backends=mock_suite(llm=primed_llm))
    yield mgr
    mgr.shutdown()


def await_idle(mgr: SessionManager, session_id: str, timeout: float = 30.0) -> None:
    assert mgr.wait_idle(session_id, timeout), "generation queue did not quiesce"
