#!/usr/bin/env python3
"""
nonorientable-reps

Run this script to build representation tables and check them exactly.

Usage:
    python run.py verify-relations --genus 8 --rep psi1
    python run.py scenario lemma83
    python run.py abelianize --genus 7 --word "d1"
    python run.py dihedral --word "e2 u1" --format json
    python run.py epsilon --genus 8 -o report.json
"""

import sys
from src.cli import main

if __name__ == "__main__":
    sys.exit(main())
