"""Top-level package for fair_world."""

__author__ = """Rohit Rai"""
__email__ = 'inbox@rohitrai.com'
__version__ = '0.1.0'
