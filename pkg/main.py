#!/usr/bin/env python3
"""
Entry point for the robust GP command line.

Usage:
    python main.py fit data.csv --method itgp --out model.json
    python main.py predict model.json --grid -3:3:200
    python main.py outliers model.json data.csv --threshold 2
    python main.py benchmark --case fiducial --replicates 50 --out results
"""
from src.cli import main

if __name__ == "__main__":
    main()
