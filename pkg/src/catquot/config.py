"""Search budget shared by the exhaustive enumerators.

Every open-ended search (functor enumeration, candidate apex scan, class
triple enumeration) charges candidates against a budget and aborts with
SearchExhausted past the cap, so runtimes stay predictable.
"""

import os

from .errors import SearchExhausted

DEFAULT_CAP = 10**6


class Budget:
    def __init__(self, cap=None):
        if cap is None:
            cap = int(os.environ.get("CATQUOT_CAP", DEFAULT_CAP))
        if cap <= 0:
            raise ValueError("search cap must be positive")
        self.cap = cap
        self.spent = 0

    def charge(self, n=1):
        self.spent += n
        if self.spent > self.cap:
            raise SearchExhausted(f"candidate cap {self.cap} exceeded")

    def remaining(self):
        return self.cap - self.spent
