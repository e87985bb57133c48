"""Exception types shared across the package."""


class EnumerationCapExceeded(RuntimeError):
    """A request needs more enumeration work than the configured cap allows."""

    def __init__(self, requested, cap):
        super().__init__(f"requested length {requested} exceeds enumeration cap {cap}")
        self.requested = requested
        self.cap = cap


class NotAFactorError(ValueError):
    """The given word does not occur in the Cantor sequence."""

    def __init__(self, word):
        super().__init__(f"{word!r} is not a factor of the Cantor sequence")
        self.word = word


class BelowThreshold(ValueError):
    """A cell formula was asked for a length where it is not proven to hold."""

    def __init__(self, n, threshold):
        super().__init__(f"n={n} is below the formula threshold {threshold}")
        self.n = n
        self.threshold = threshold


class MethodDisagreement(AssertionError):
    """Brute-force and formula evaluation produced different values."""

    def __init__(self, n, k, fast, brute, cell=None):
        where = f" in cell {cell}" if cell is not None else ""
        super().__init__(
            f"P^({k})({n}){where}: fast={fast} brute={brute}"
        )
        self.n = n
        self.k = k
        self.fast = fast
        self.brute = brute
        self.cell = cell
