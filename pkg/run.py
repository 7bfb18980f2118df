#!/usr/bin/env python3
"""
Main runner for the doubles-of-F2 toolkit

    python run.py classify "a^3 b^3" [--bound N] [--emit json|dot] [--out FILE]
    python run.py orbit-min WORD | is-primitive WORD | aut-equiv WORD WORD
    python run.py membership WORD --subgroup "a^3,b^2" [--rewrite]
    python run.py ivanov emit [--compact]
    python run.py ivanov verify --suite all --samples 100 --seed 7
    python run.py mr factor --hom '{"a1": "a", "a2": "b", "b1": "a", "b2": "b"}'
    python run.py mr separability --samples 100 --seed 7
    python run.py version
"""

import sys

from services.cli_service.cli import main

if __name__ == "__main__":
    sys.exit(main())
