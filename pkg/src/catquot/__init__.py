"""Filter quotients of finite and probe-bounded categories, checked exhaustively."""

__version__ = "0.1.0"
