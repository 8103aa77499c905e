import time
import logging
from typing import Optional


def setup_logging(level: str = "INFO"):
    """로깅 설정"""
    logging.basicConfig(
        level=getattr(logging, level.upper()),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S'
    )


class Stopwatch:
    """경과 시간 측정 (단조 시계 기준)"""

    def __init__(self, limit_seconds: Optional[float] = None):
        self.started = time.monotonic()
        self.limit_seconds = limit_seconds

    @property
    def elapsed(self) -> float:
        return time.monotonic() - self.started

    @property
    def elapsed_ms(self) -> int:
        return int(self.elapsed * 1000)

    def expired(self) -> bool:
        """시간 한도 초과 여부"""
        return self.limit_seconds is not None and self.elapsed > self.limit_seconds


def format_seconds(seconds: float) -> str:
    """배너 출력용 초 단위 포맷 (예: '  0.75')"""
    return f"{seconds:6.2f}"
