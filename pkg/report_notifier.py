"""
Report Notification for composable-qm
Posts verification, derivation and GNS report summaries to a webhook (Discord-compatible embeds)
"""

import logging
import time
import traceback
from datetime import datetime, timezone
from functools import wraps

import requests

from config import get_config
from errors import ComposableError

logger = logging.getLogger(__name__)


class ReportNotifier:
    """Webhook poster with a per-minute rate limit, retries and a timeout"""

    def __init__(self, settings=None):
        self.config = settings or get_config()

        self.webhook_url = self.config.WEBHOOK_URL
        self.enabled = bool(self.config.NOTIFY_ENABLED and self.webhook_url)
        self.rate_limit = self.config.NOTIFY_RATE_LIMIT
        self.retry_attempts = self.config.NOTIFY_RETRY_ATTEMPTS
        self.retry_delay = self.config.NOTIFY_RETRY_DELAY
        self.timeout = self.config.NOTIFY_TIMEOUT

        self.colors = {
            'pass': 0x00FF00,
            'fail': 0xFF0000,
            'info': 0x0099FF,
            'warning': 0xFFAA00,
            'error': 0x990000,
        }

        self.message_count = 0
        self.last_reset = datetime.now()

    def _check_rate_limit(self):
        now = datetime.now()
        if (now - self.last_reset).seconds >= 60:
            self.message_count = 0
            self.last_reset = now

        if self.message_count >= self.rate_limit:
            logger.warning("Notification rate limit reached, message dropped")
            return False

        self.message_count += 1
        return True

    def _create_embed(self, title, description=None, color=None, fields=None):
        embed = {
            "title": title,
            "color": color or self.colors['info'],
            "timestamp": datetime.now(timezone.utc).isoformat(),
            "footer": {"text": "composable-qm"},
        }
        if description:
            embed["description"] = description
        if fields:
            embed["fields"] = fields
        return embed

    def _send(self, embed):
        """Post one embed; returns True on success and never raises"""
        if not self.enabled or not self._check_rate_limit():
            return False

        payload = {"embeds": [embed], "username": "composable-qm"}
        for attempt in range(1, self.retry_attempts + 1):
            try:
                response = requests.post(self.webhook_url, json=payload, timeout=self.timeout)
                if response.status_code in (200, 204):
                    return True
                logger.warning(f"Webhook returned {response.status_code} (attempt {attempt})")
            except requests.RequestException as e:
                logger.error(f"Webhook post failed (attempt {attempt}): {e}")
            if attempt < self.retry_attempts:
                time.sleep(self.retry_delay)
        return False

    # ===== REPORTS =====

    def notify_report(self, report):
        """Summary of a verify / solve / gns / witness report dictionary"""
        checks = report.get('checks', [])
        failed = [c for c in checks if c.get('status') != 'pass']
        status = report.get('status', 'pass')

        fields = [
            {"name": "Command", "value": str(report.get('command', '?'))[:200], "inline": False},
            {"name": "Seed", "value": str(report.get('seed')), "inline": True},
            {"name": "Checks", "value": f"{len(checks) - len(failed)}/{len(checks)} passed", "inline": True},
        ]
        for check in failed[:5]:
            part = (check.get('counterexample') or {}).get('part', '')
            fields.append({"name": f"✗ {check.get('name')}",
                           "value": f"{check.get('realization', '')} {part}".strip() or "failed",
                           "inline": False})

        embed = self._create_embed(
            title=f"{'✓' if status == 'pass' else '✗'} composable-qm report: {status}",
            color=self.colors['pass'] if status == 'pass' else self.colors['fail'],
            fields=fields,
        )
        return self._send(embed)

    def notify_error(self, error, context=None):
        fields = [
            {"name": "Error Type", "value": type(error).__name__, "inline": True},
            {"name": "Message", "value": str(error)[:200], "inline": False},
        ]
        if context:
            fields.append({"name": "Context", "value": context, "inline": True})

        tb_lines = traceback.format_tb(error.__traceback__)
        if tb_lines:
            stack_preview = "".join(tb_lines[-3:])
            fields.append({"name": "Stack Trace", "value": f"```{stack_preview[:500]}```", "inline": False})

        embed = self._create_embed(title="🚨 composable-qm error", color=self.colors['error'], fields=fields)
        return self._send(embed)

    def notify_slow(self, name, seconds, threshold):
        embed = self._create_embed(
            title="📊 Slow command",
            description=f"{name} took {seconds:.2f}s (threshold {threshold:.2f}s)",
            color=self.colors['warning'],
        )
        return self._send(embed)


notifier = ReportNotifier()


def log_errors(context=None, expected=(ComposableError,)):
    """Log and notify unexpected exceptions, then re-raise; `expected` ones pass through silently"""
    def decorator(func):
        @wraps(func)
        def wrapper(*args, **kwargs):
            try:
                return func(*args, **kwargs)
            except expected:
                raise
            except Exception as e:
                error_context = context or f"Function: {func.__name__}"
                logger.error(f"{error_context}: {type(e).__name__}: {e}")
                notifier.notify_error(e, error_context)
                raise
        return wrapper
    return decorator


def log_performance(threshold_seconds=60.0):
    """Log functions slower than threshold_seconds"""
    def decorator(func):
        @wraps(func)
        def wrapper(*args, **kwargs):
            start_time = time.time()
            try:
                return func(*args, **kwargs)
            finally:
                execution_time = time.time() - start_time
                logger.debug(f"{func.__name__} took {execution_time:.3f}s")
                if execution_time > threshold_seconds:
                    logger.warning(f"{func.__name__} took {execution_time:.2f}s (threshold {threshold_seconds:.2f}s)")
                    notifier.notify_slow(func.__name__, execution_time, threshold_seconds)
        return wrapper
    return decorator
