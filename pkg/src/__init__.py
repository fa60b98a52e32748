"""
NetLearn - симулятор коллективного обучения на small-world сетях
"""

__version__ = "0.2.0"
