from dataclasses import dataclass, field
from typing import Any, Optional

from config.settings import RuntimeSettings

@dataclass
class AlgebraDependencies:
    """Dependency container handed to every command runner.

    Attributes:
        settings: Runtime limits loaded from the environment.
        seed: Seed for every random choice made by the command. Defaults to 0.
        run_context: Free-form metadata about the invocation (command name,
            output path), echoed into log messages.
        threads: Worker count requested on the command line, if any.
    """
    settings: RuntimeSettings
    seed: int = 0
    run_context: dict[str, Any] = field(default_factory=dict)
    threads: Optional[int] = None

    @property
    def worker_count(self) -> int:
        """Requested workers, never more than the configured bound."""
        if self.threads is None:
            return self.settings.threads
        return max(1, min(self.threads, self.settings.threads))
