"""
Report Notifier Tests
Webhook posting, retries, rate limiting and the error / performance decorators.
requests.post is patched throughout, nothing leaves the machine.
"""

import sys
from unittest import mock

import requests

import report_notifier
from config import TestingConfig
from errors import SolverError
from report_notifier import ReportNotifier, log_errors, log_performance


class WebhookConfig(TestingConfig):
    NOTIFY_ENABLED = True
    WEBHOOK_URL = 'https://webhook.invalid/hook'
    NOTIFY_RETRY_DELAY = 0
    NOTIFY_RATE_LIMIT = 2


REPORT = {
    'command': 'verify --class=elliptic',
    'seed': 7,
    'status': 'fail',
    'checks': [
        {'name': 'petersen', 'realization': 'elliptic-matrices', 'status': 'fail',
         'counterexample': {'part': 'sigma12'}},
        {'name': 'jacobi', 'realization': 'elliptic-matrices', 'status': 'pass'},
    ],
}


def response(status_code):
    return mock.Mock(status_code=status_code)


def test_disabled_without_webhook():
    notifier = ReportNotifier(TestingConfig)
    assert not notifier.enabled
    with mock.patch('report_notifier.requests.post') as post:
        assert notifier.notify_report(REPORT) is False
        post.assert_not_called()


def test_report_embed_posted():
    notifier = ReportNotifier(WebhookConfig)
    with mock.patch('report_notifier.requests.post', return_value=response(204)) as post:
        assert notifier.notify_report(REPORT) is True
    post.assert_called_once()
    args, kwargs = post.call_args
    assert args[0] == WebhookConfig.WEBHOOK_URL
    assert kwargs['timeout'] == WebhookConfig.NOTIFY_TIMEOUT
    embed = kwargs['json']['embeds'][0]
    assert 'fail' in embed['title']
    assert embed['color'] == notifier.colors['fail']
    names = [field['name'] for field in embed['fields']]
    assert '✗ petersen' in names and '✗ jacobi' not in names
    checks = next(field for field in embed['fields'] if field['name'] == 'Checks')
    assert checks['value'] == '1/2 passed'


def test_retries_on_bad_status():
    notifier = ReportNotifier(WebhookConfig)
    with mock.patch('report_notifier.requests.post', return_value=response(500)) as post:
        assert notifier.notify_slow('verify', 3.0, 1.0) is False
    assert post.call_count == WebhookConfig.NOTIFY_RETRY_ATTEMPTS


def test_request_errors_are_swallowed():
    notifier = ReportNotifier(WebhookConfig)
    failure = requests.ConnectionError('no route to host')
    with mock.patch('report_notifier.requests.post', side_effect=failure) as post:
        assert notifier.notify_error(ValueError('boom'), 'context') is False
    assert post.call_count == WebhookConfig.NOTIFY_RETRY_ATTEMPTS


def test_rate_limit():
    notifier = ReportNotifier(WebhookConfig)
    with mock.patch('report_notifier.requests.post', return_value=response(200)) as post:
        results = [notifier.notify_report(REPORT) for _ in range(3)]
    assert results == [True, True, False]
    assert post.call_count == WebhookConfig.NOTIFY_RATE_LIMIT


def test_log_errors_notifies_unexpected():
    @log_errors(context='unit test')
    def broken():
        raise RuntimeError('unexpected')

    with mock.patch.object(report_notifier.notifier, 'notify_error') as notify:
        try:
            broken()
        except RuntimeError:
            pass
        else:
            raise AssertionError("log_errors must re-raise")
    notify.assert_called_once()
    assert notify.call_args[0][1] == 'unit test'


def test_log_errors_passes_expected_through():
    @log_errors()
    def inconsistent():
        raise SolverError('a = 0 and a = -1')

    with mock.patch.object(report_notifier.notifier, 'notify_error') as notify:
        try:
            inconsistent()
        except SolverError:
            pass
        else:
            raise AssertionError("expected errors still propagate")
    notify.assert_not_called()


def test_log_performance():
    @log_performance(threshold_seconds=-1.0)
    def quick():
        return 42

    with mock.patch.object(report_notifier.notifier, 'notify_slow') as notify:
        assert quick() == 42
    notify.assert_called_once()
    assert notify.call_args[0][0] == 'quick'

    @log_performance(threshold_seconds=60.0)
    def also_quick():
        return 'done'

    with mock.patch.object(report_notifier.notifier, 'notify_slow') as notify:
        assert also_quick() == 'done'
    notify.assert_not_called()


TESTS = [
    test_disabled_without_webhook,
    test_report_embed_posted,
    test_retries_on_bad_status,
    test_request_errors_are_swallowed,
    test_rate_limit,
    test_log_errors_notifies_unexpected,
    test_log_errors_passes_expected_through,
    test_log_performance,
]


def main():
    """Run every test in this file"""
    print("🧪 Report Notifier Tests")
    print("=" * 40)
    failures = 0
    for test in TESTS:
        try:
            test()
            print(f"✓ {test.__name__}")
        except Exception as e:
            failures += 1
            print(f"✗ {test.__name__}: {e}")
    print(f"\n{len(TESTS) - failures}/{len(TESTS)} passed")
    return failures == 0


if __name__ == "__main__":
    sys.exit(0 if main() else 1)
