"""
Модуль логирования симулятора
"""
