from .batch_worker import BatchWorker

__all__ = ["BatchWorker"]
