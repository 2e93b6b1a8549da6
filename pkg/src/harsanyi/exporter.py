"""보고서 / 테이블 출력 모듈

- report.json: 결정적 지표 보고서 (키 정렬, 시각 정보 없음)
- *.csv: 곡선 데이터 (pandas)
- manifest.yaml: 실행 시각과 설정 사본
- tables/: 표본별 HARS1 테이블과 색인 CSV
"""

import json
from datetime import datetime
from pathlib import Path

import pandas as pd
import yaml

from . import __version__
from .batch import BatchExtraction
from .codec import read_table, write_table, write_table_csv
from .constants import (
    FAILED_LOG_FILENAME,
    MANIFEST_FILENAME,
    REPORT_FILENAME,
    TABLE_INDEX_FILENAME,
    TABLE_SUFFIX,
    TABLES_DIRNAME,
)
from .models import HarsanyiError, InteractionTable, MetricsReport


class ReportExporter:
    """
    실행 결과 저장기

    같은 설정으로 다시 실행하면 report.json과 CSV는 바이트 단위로 같고,
    실행 시각은 manifest.yaml에만 기록
    """

    def __init__(self, output_dir: str | Path):
        """
        Args:
            output_dir: 출력 디렉토리
        """
        self.output_dir = Path(output_dir)
        self.output_dir.mkdir(parents=True, exist_ok=True)

    @property
    def tables_dir(self) -> Path:
        return self.output_dir / TABLES_DIRNAME

    def export_report(self, report: MetricsReport, filename: str = REPORT_FILENAME) -> Path:
        """JSON 보고서 저장"""
        path = self.output_dir / filename
        path.write_text(report.to_json(), encoding="utf-8")
        return path

    def export_curve(self, name: str, columns: dict) -> Path:
        """
        곡선 CSV 저장

        Args:
            name: 파일 이름 (확장자 제외)
            columns: 열 이름 → 값 목록
        """
        path = self.output_dir / f"{name}.csv"
        pd.DataFrame(columns).to_csv(path, index=False, float_format="%.17g")
        return path

    def export_manifest(self, command: str, config: dict, extra: dict | None = None) -> Path:
        """실행 매니페스트 YAML 저장 (시각, 버전, 설정 사본)"""
        manifest = {
            "command": command,
            "version": __version__,
            "created_at": datetime.now().isoformat(),
            "config": config,
        }
        if extra:
            manifest.update(extra)
        path = self.output_dir / MANIFEST_FILENAME
        with open(path, "w", encoding="utf-8") as f:
            yaml.dump(
                manifest,
                f,
                allow_unicode=True,
                default_flow_style=False,
                sort_keys=False,
            )
        return path

    def export_tables(self, batch: BatchExtraction, csv: bool = False) -> list[Path]:
        """
        성공한 표본 테이블을 HARS1 파일로 저장하고 색인 CSV 작성

        Returns:
            저장된 테이블 경로 목록 (표본 순서)
        """
        self.tables_dir.mkdir(parents=True, exist_ok=True)
        saved, rows = [], []
        for outcome in batch.outcomes:
            if not outcome.success or outcome.table is None:
                continue
            stem = f"sample_{outcome.index:05d}"
            path = write_table(outcome.table, self.tables_dir / f"{stem}{TABLE_SUFFIX}")
            if csv:
                write_table_csv(outcome.table, self.tables_dir / f"{stem}.csv")
            saved.append(path)
            rows.append({
                "file": path.name,
                "index": outcome.index,
                "label": outcome.label,
                "residual": outcome.residual,
            })
        index = pd.DataFrame(rows, columns=["file", "index", "label", "residual"])
        index.to_csv(self.tables_dir / TABLE_INDEX_FILENAME, index=False, float_format="%.17g")
        return saved

    def export_failed_log(self, batch: BatchExtraction) -> int:
        """실패 로그 JSONL 저장"""
        count = 0
        with open(self.output_dir / FAILED_LOG_FILENAME, "w", encoding="utf-8") as f:
            for outcome in batch.outcomes:
                if outcome.success:
                    continue
                log_entry = {
                    "index": outcome.index,
                    "label": outcome.label,
                    "error": outcome.error,
                    "residual": outcome.residual,
                    "tolerance": outcome.tolerance,
                    "violated": outcome.violated,
                }
                f.write(json.dumps(log_entry, ensure_ascii=False))
                f.write("\n")
                count += 1
        return count


def load_tables(directory: str | Path) -> tuple[list[InteractionTable], pd.DataFrame]:
    """
    테이블 디렉토리 로드

    색인 CSV가 있으면 그 순서를, 없으면 파일명 순서를 따른다

    Returns:
        (테이블 목록, 색인 데이터프레임)

    Raises:
        HarsanyiError: 디렉토리 없음, 테이블 없음, 변수 개수 불일치
    """
    directory = Path(directory)
    if directory.is_dir() and (directory / TABLES_DIRNAME).is_dir():
        directory = directory / TABLES_DIRNAME
    if not directory.is_dir():
        raise HarsanyiError(f"테이블 디렉토리 없음: {directory}")

    index_path = directory / TABLE_INDEX_FILENAME
    if index_path.is_file():
        index = pd.read_csv(index_path, dtype={"file": str}, float_precision="round_trip")
    else:
        files = sorted(p.name for p in directory.glob(f"*{TABLE_SUFFIX}"))
        index = pd.DataFrame({"file": files})

    tables = [read_table(directory / name) for name in index["file"]]
    if not tables:
        raise HarsanyiError(f"테이블이 없음: {directory}")
    n = tables[0].n
    mismatched = [name for name, t in zip(index["file"], tables) if t.n != n]
    if mismatched:
        raise HarsanyiError(f"변수 개수 불일치 테이블: {', '.join(mismatched)}")
    return tables, index
