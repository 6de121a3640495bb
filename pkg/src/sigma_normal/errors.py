"""Exception types shared by every layer of the package."""


class InputError(ValueError):
    """Malformed or out-of-range input (bad index, bad table, unknown label)."""


class CapabilityError(RuntimeError):
    """The request exceeds a documented enumeration bound."""


class ContractError(RuntimeError):
    """An operation was called on an object that failed its precondition."""
