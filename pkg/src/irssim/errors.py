"""Exception types shared across the simulator."""


class SimError(Exception):
    """Base class for all simulator errors."""


class InvalidConfig(SimError):
    """A scenario config violates one or more field invariants.

    `fields` holds the dotted path of every offending field, e.g.
    ["micro.transmit_power_w"].
    """

    def __init__(self, fields, message=None):
        if isinstance(fields, str):
            fields = [fields]
        self.fields = list(fields)
        super().__init__(message or "invalid config: " + "; ".join(self.fields))


class UnsupportedCarrier(SimError):
    """Carrier outside the built-in default set (28, 50, 70, 90 GHz)."""


class DegenerateGeometry(SimError):
    """A link distance collapsed below the minimum separation."""


class InvalidAngle(SimError):
    """Panel departure/arrival angle outside [0, 90) degrees."""


class InvalidPower(SimError):
    """A power argument outside its valid range."""


class BracketError(SimError):
    """Bisection bracket does not straddle the target edge coverage."""

    def __init__(self, lo, hi, f_lo, f_hi, target):
        self.lo = lo
        self.hi = hi
        self.f_lo = f_lo
        self.f_hi = f_hi
        self.target = target
        super().__init__(
            f"target {target} not bracketed: edge_min({lo}) = {f_lo}, "
            f"edge_min({hi}) = {f_hi}"
        )


class Infeasible(SimError):
    """Element-count search exhausted n_max without reaching the target."""

    def __init__(self, n_max, achieved, target):
        self.n_max = n_max
        self.achieved = achieved
        self.target = target
        super().__init__(
            f"target {target} infeasible with n_max = {n_max} "
            f"(achieved edge_min = {achieved})"
        )


class MismatchedScenarios(SimError):
    """Paired scenarios differ in carrier or evaluation region."""


class ParseError(SimError):
    """Config file missing or not parseable."""


class UnknownKey(SimError):
    """Config file contains a key outside the schema."""
