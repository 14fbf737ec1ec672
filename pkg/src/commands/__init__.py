"""Expose all subcommand classes for easy imports."""

from .base_command import BaseCommand, CommandRequest, CommandResult
from .eval_command import EvalCommand
from .goodpoints_command import GoodPointsCommand
from .vanish_command import VanishCommand
from .rmcode_command import RMCodeCommand
