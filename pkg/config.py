# config.py
import os
from dotenv import load_dotenv
from pathlib import Path

# .env 파일 불러오기
BASE_DIR = Path(__file__).resolve().parent
load_dotenv(dotenv_path=BASE_DIR / ".env")


def _optional_float(name: str):
    value = os.getenv(name)
    return float(value) if value else None


class config:
    # 로깅 설정
    LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO")

    # 문제 파일 위치
    PROBLEMS_DIR = Path(os.getenv("PROBLEMS_DIR", str(BASE_DIR / "problems")))

    # 탐색 한도 (입력 파일의 assign 이 우선)
    MAX_RETAINED = int(os.getenv("MAX_RETAINED", "200000"))
    MAX_SECONDS = _optional_float("MAX_SECONDS")
    REPORT_INTERVAL = int(os.getenv("REPORT_INTERVAL", "500"))

    # 재작성 단계 한도
    DEMOD_STEP_CAP = int(os.getenv("DEMOD_STEP_CAP", "10000"))
    ORACLE_STEP_CAP = int(os.getenv("ORACLE_STEP_CAP", "10000"))

    # 코퍼스 병렬 실행 수
    CORPUS_WORKERS = int(os.getenv("CORPUS_WORKERS", "1"))

    # HTTP 서버 설정
    API_HOST = os.getenv("API_HOST", "0.0.0.0")
    API_PORT = int(os.getenv("API_PORT", "8000"))

# 사용 예시를 위한 인스턴스
config = config()
