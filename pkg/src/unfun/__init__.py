"""unfun: a two-task headline game with principled rewards, plus the analysis
suite for the satirical/serious headline pairs it collects."""

__version__ = "0.1.0"
