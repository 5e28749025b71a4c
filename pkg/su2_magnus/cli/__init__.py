from .commands import cmd_lz, cmd_rabi, cmd_report
from .config import SweepConfig, build_config, read_config_file
