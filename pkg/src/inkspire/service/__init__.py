"""HTTP service binding the sketch-design-sketch loop together."""

from .app import create_app
from .config import ServiceConfig, load_config
from .jobs import GenerationJob, JobState, SessionJobQueue
from .manager import SessionManager
from .persistence import SessionStore

__all__ = [
    "create_app",
    "ServiceConfig",
    "load_config",
    "GenerationJob",
    "JobState",
    "SessionJobQueue",
    "SessionManager",
    "SessionStore",
]
