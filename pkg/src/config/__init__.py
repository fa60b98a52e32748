"""
Модуль конфигурации
"""
