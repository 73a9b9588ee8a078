"""posh: certified drawings of POSH graphs on the exploding double chain."""

__version__ = "0.1.0"
