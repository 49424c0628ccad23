from .command_timing import *
