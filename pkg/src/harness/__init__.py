"""
Пакетные эксперименты и агрегация результатов
"""
