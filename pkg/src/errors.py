class ArchfuseError(Exception):
    """Base class for every error raised by the recovery pipeline."""


class InputError(ArchfuseError):
    """Unreadable or malformed input: missing files, bad JSON, invalid config."""


class SchemaError(InputError):
    def __init__(self, message: str, issues: list[str]):
        self.issues = list(issues)
        detail = "\n".join(f"  - {issue}" for issue in self.issues)
        super().__init__(f"{message}\n{detail}" if detail else message)


class PipelineError(ArchfuseError):
    def __init__(self, stage: str, message: str):
        self.stage = stage
        super().__init__(f"[{stage}] {message}")


class MetricError(ArchfuseError):
    """Metric operands violate a precondition (e.g. different universes)."""
