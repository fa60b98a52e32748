#!/usr/bin/env python
"""
Скрипт для запуска симулятора
"""
import sys

from src.cli.app import parse_and_dispatch

def main():
    sys.exit(parse_and_dispatch())

if __name__ == "__main__":
    main()
