from datetime import datetime, timedelta, timezone

EPOCH = datetime(1970, 1, 1, tzinfo=timezone.utc)
# 9999-12-31T23:59:59.999Z, the last instant `datetime` can render
MAX_TIMESTAMP_MS = (datetime.max.replace(tzinfo=timezone.utc) - EPOCH) // timedelta(milliseconds=1)


def format_elapsed_time(elapsed_time: float) -> str:
    """Formats the elapsed time into a human-readable string.

    If the time is less than a minute, returns only seconds. Otherwise,
    returns the time in minutes and seconds.

    Args:
        elapsed_time: Time in seconds as a float.

    Returns:
        A string representing the formatted time.

    """
    minutes, seconds = divmod(elapsed_time, 60)

    if minutes > 0:
        return f"{int(minutes)} minute(s) and {seconds:.2f} second(s)"
    return f"{seconds:.2f} second(s)"


def format_timestamp_ms(timestamp_ms: int) -> str:
    """Render epoch milliseconds as a UTC ISO-8601 string.

    Millisecond precision is always printed so that rendered behavior
    sequences have a stable width, e.g. ``2024-05-01T12:00:00.250Z``.

    """
    moment = EPOCH + timedelta(milliseconds=timestamp_ms)
    return moment.strftime("%Y-%m-%dT%H:%M:%S.") + f"{timestamp_ms % 1000:03d}Z"
