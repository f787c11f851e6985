#!/usr/bin/env python3
"""
Main entry point for the Heterophily Gauge command line.

Examples:
    python main.py generate --output data/planted --mixing 0.3 --hubs 200
    python main.py convert --graph data/planted/bundle.json --output planted.hgb
    python main.py metrics --graph planted.hgb --lengths 1,2 --agg mean
    python main.py split --graph planted.hgb --strategy random --ratios 0.8,0.1,0.1 --output masks.json
"""

import os
import sys

# Add the project root to the Python path
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from heterophily_gauge.cli import main

if __name__ == "__main__":
    sys.exit(main())
