"""
Модель: убеждения, сети, цикл прогона
"""
