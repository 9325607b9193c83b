"""
Entry point for running metibench as a module.
"""

from .cli import main

if __name__ == "__main__":
    main()
