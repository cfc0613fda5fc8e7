#!/usr/bin/env python3
"""
dynabt - Command-Line Interface

Runs the same entry point as the installed `dynabt` script from a source checkout.
"""

from dynabt.cli import main

if __name__ == '__main__':
    main()
