from django.dispatch import Signal


theorem_checked = Signal()
