"""
Process-wide handles set once by the entry point: the loaded configuration
and the console presenter. Worker processes start with both unset.
"""


class RuntimeConfig:
    """
    Attributes:
        cli_interface: CLIInterface instance (None in tests and worker processes)
        config_data: validated config.json contents with env overrides applied
    """
    cli_interface = None
    config_data = None

    @classmethod
    def reset(cls) -> None:
        cls.cli_interface = None
        cls.config_data = None
