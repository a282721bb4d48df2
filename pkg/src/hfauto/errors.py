class AutomatonError(ValueError):
    """Bad input to an automaton operation."""


class InvalidAutomatonError(AutomatonError):
    def __init__(self, violations):
        self.violations = list(violations)
        lines = "; ".join(str(v) for v in self.violations)
        super().__init__(f"automaton is not well formed: {lines}")


class AlphabetMismatchError(AutomatonError):
    def __init__(self, left, right):
        self.left = tuple(left)
        self.right = tuple(right)
        super().__init__(f"alphabets differ: {' '.join(self.left)} vs {' '.join(self.right)}")
