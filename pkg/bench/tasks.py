import logging

from celery import shared_task
from django.utils import timezone

from core.io import parse_instance

from .generation import GenConfig, generate_instances
from .models import BenchRun
from .runner import evaluate_instance, parse_strategies, run_bench

logger = logging.getLogger(__name__)


@shared_task
def evaluate_instance_task(instance_data, strategy_names, verify=False, reduced=None):
    """One instance of a bench run; returns InstanceResult.to_dict()."""
    instance = parse_instance(instance_data)
    result = evaluate_instance(instance, parse_strategies(strategy_names), verify=verify, reduced=reduced)
    return result.to_dict()


@shared_task
def execute_bench_run(run_id):
    run = BenchRun.objects.get(pk=run_id)
    run.status = BenchRun.Status.RUNNING
    run.save(update_fields=['status'])
    logger.info(f"Starting bench run {run_id}")

    try:
        cfg = GenConfig.from_dict(run.config)
        report = run_bench(
            generate_instances(cfg), run.strategies, verify=run.verify, use_celery=False,
            metadata={'config': cfg.to_dict()},
        )
    except Exception as e:
        logger.error(f"Bench run {run_id} failed: {e}", exc_info=True)
        run.status = BenchRun.Status.FAILED
        run.error = str(e)
        run.finished_at = timezone.now()
        run.save(update_fields=['status', 'error', 'finished_at'])
        return run.status

    run.report = report.to_dict()
    run.status = BenchRun.Status.DONE
    run.finished_at = timezone.now()
    run.save(update_fields=['report', 'status', 'finished_at'])
    logger.info(f"Bench run {run_id} finished with {len(report.results)} instance(s)")
    return run.status
