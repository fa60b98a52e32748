"""
Командная строка
"""
