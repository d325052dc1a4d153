"""Command-line interface and session files."""
from .main import EXIT_CAP, EXIT_INVALID, EXIT_OK, EXIT_USAGE, build_parser, main, run
from .session import Session, canonical, load_session, save_session, serialize, session_from_dict

__all__ = ["EXIT_CAP", "EXIT_INVALID", "EXIT_OK", "EXIT_USAGE", "Session", "build_parser",
           "canonical", "load_session", "main", "run", "save_session", "serialize",
           "session_from_dict"]
