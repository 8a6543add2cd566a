"""Error types shared across the package."""


class DomainError(ValueError):
    """An input outside the domain of an operation; carries a stable ``code``."""

    code = "domain_error"

    def __init__(self, message: str, code: str | None = None):
        super().__init__(message)
        if code is not None:
            self.code = code

    def to_json(self) -> dict:
        return {"error": self.code, "message": str(self)}


class CapExceeded(DomainError):
    """A search or exploration stopped at a configured limit without a verdict."""

    code = "cap_exceeded"
