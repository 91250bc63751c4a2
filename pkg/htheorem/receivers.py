import logging

from django.dispatch import receiver

from htheorem.signals import theorem_checked

logger = logging.getLogger(__name__)


@receiver(theorem_checked)
def log_violation(sender, report, system, **kwargs):  # pylint: disable=unused-argument
    if not report.implication_consistent:
        logger.error(
            "diagonal invariant (residual %g) but not unital (defect %g) for %r",
            report.diag_residual,
            report.unitality_defect,
            system,
        )
