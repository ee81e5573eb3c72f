# -*- coding: utf-8 -*-

"""
Execution machinery: worker pool, message bus and the verification harness.
"""

from .workers import THREADS_ENV, batched, map_ordered, run_batches, worker_count
from .message_bus import CHECK_TOPIC, DONE_TOPIC, FINDING_TOPIC, MessageBus, logging_listener
