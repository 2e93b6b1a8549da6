"""배치 추출 모듈

선택된 표본마다 값 프로파일 → Harsanyi 테이블 → 효율성 잔차 점검
"""

import logging
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field
from datetime import datetime
from multiprocessing import cpu_count
from typing import Callable

import numpy as np
from tqdm import tqdm

from .lattice import (
    build_value_profile,
    efficiency_residual,
    efficiency_tolerance,
    harsanyi_transform,
)
from .models import InteractionTable, VariableSet
from .values import BaselinePolicy, ContextSpec, ValueFunctionSpec, context_averaged_profile

logger = logging.getLogger(__name__)

ValueFactory = Callable[[int], ValueFunctionSpec]


@dataclass
class ExtractionJob:
    """표본 하나의 추출 작업"""
    index: int                       # 선택 내 위치
    sample: np.ndarray
    label: int                       # 정답 클래스


@dataclass
class ExtractionOutcome:
    """표본 하나의 추출 결과"""
    index: int
    label: int
    success: bool
    table: InteractionTable | None = None
    residual: float | None = None
    tolerance: float | None = None
    error: str | None = None

    @property
    def violated(self) -> bool:
        """효율성 잔차가 허용치를 넘었는지"""
        if self.residual is None or self.tolerance is None:
            return False
        return self.residual > self.tolerance


@dataclass
class BatchExtraction:
    """배치 추출 결과"""
    total: int
    success: int
    failed: int
    outcomes: list[ExtractionOutcome] = field(default_factory=list)
    started_at: datetime = field(default_factory=datetime.now)
    finished_at: datetime | None = None

    @property
    def success_rate(self) -> float:
        """성공률 (0.0 ~ 1.0)"""
        if self.total == 0:
            return 0.0
        return self.success / self.total

    @property
    def violations(self) -> list[ExtractionOutcome]:
        return [o for o in self.outcomes if o.violated]

    @property
    def tables(self) -> list[InteractionTable]:
        """성공한 테이블 (선택 순서)"""
        return [o.table for o in self.outcomes if o.success and o.table is not None]

    def tables_by_index(self) -> dict[int, InteractionTable]:
        """표본 인덱스 → 성공한 테이블"""
        return {
            o.index: o.table for o in self.outcomes if o.success and o.table is not None
        }

    def paired_tables(
        self, other: "BatchExtraction"
    ) -> list[tuple[InteractionTable, InteractionTable]]:
        """같은 표본끼리 (self, other) 테이블 쌍 (양쪽 모두 성공한 표본만, 인덱스 순)"""
        mine, theirs = self.tables_by_index(), other.tables_by_index()
        return [(mine[i], theirs[i]) for i in sorted(mine.keys() & theirs.keys())]

    @property
    def max_residual(self) -> float:
        residuals = [o.residual for o in self.outcomes if o.residual is not None]
        return max(residuals, default=0.0)

    def to_summary(self) -> dict:
        """요약 정보 반환"""
        return {
            "total": self.total,
            "success": self.success,
            "failed": self.failed,
            "success_rate": f"{self.success_rate:.1%}",
            "max_residual": self.max_residual,
            "started_at": self.started_at.isoformat(),
            "finished_at": self.finished_at.isoformat() if self.finished_at else None,
        }


def extract_one(
    value_factory: ValueFactory,
    job: ExtractionJob,
    baseline: np.ndarray,
    context: ContextSpec | None = None,
) -> ExtractionOutcome:
    """
    표본 하나 추출 (워커 프로세스에서도 실행)

    잔차가 허용치를 넘어도 결과는 돌려주고, 판정은 호출 측이 한다
    """
    value_fn = value_factory(job.label)
    if context is None:
        profile = build_value_profile(value_fn, job.sample, baseline)
    else:
        analyzed = context.context_mask.complement()
        profile = context_averaged_profile(
            value_fn, job.sample, analyzed, context, BaselinePolicy.explicit(baseline)
        )
    table = harsanyi_transform(profile)
    residual = efficiency_residual(profile, table)
    tolerance = efficiency_tolerance(profile)
    logger.debug(f"표본 {job.index}: 효율성 잔차 {residual:.3e} (허용 {tolerance:.3e})")
    return ExtractionOutcome(
        index=job.index,
        label=job.label,
        success=residual <= tolerance,
        table=table,
        residual=residual,
        tolerance=tolerance,
        error=None if residual <= tolerance else f"효율성 잔차 초과: {residual:.3e}",
    )


class BatchExtractor:
    """
    표본 배치 Harsanyi 추출기

    워커가 2개 이상이면 프로세스 풀로 분산 (value_factory는 pickle 가능해야 함)
    """

    def __init__(
        self,
        value_factory: ValueFactory,
        baseline: np.ndarray,
        workers: int | None = None,
        context_variables: list[int] | None = None,
        quadrature_points: int | None = None,
    ):
        """
        Args:
            value_factory: 정답 레이블 → 값 함수
            baseline: 기준값 벡터 (특징 단위)
            workers: 워커 프로세스 수 (기본: CPU 코어의 50%)
            context_variables: 배경 변수 좌표 (None이면 배경 없음)
            quadrature_points: 배경 강도 적분점 개수
        """
        if workers is None:
            workers = max(1, cpu_count() // 2)
        self.workers = workers
        self.value_factory = value_factory
        self.baseline = np.asarray(baseline, dtype=np.float64)
        self.context = None
        if context_variables:
            n = self.baseline.shape[0]
            mask = VariableSet.from_indices(context_variables, n)
            if quadrature_points is None:
                self.context = ContextSpec(mask)
            else:
                self.context = ContextSpec(mask, quadrature_points)

    @property
    def n_variables(self) -> int:
        """테이블 변수 개수 (배경 변수 제외)"""
        total = self.baseline.shape[0]
        return total - (len(self.context.context_mask) if self.context else 0)

    def extract(
        self,
        samples: np.ndarray,
        labels: np.ndarray,
        progress: bool = True,
    ) -> BatchExtraction:
        """
        표본 목록 추출

        Args:
            samples: (표본 × 특징) 배열
            labels: 정답 클래스
            progress: 진행률 표시 여부

        Returns:
            BatchExtraction (결과는 표본 순서로 정렬)
        """
        jobs = [
            ExtractionJob(index=i, sample=np.asarray(x, dtype=np.float64), label=int(y))
            for i, (x, y) in enumerate(zip(samples, labels))
        ]
        started_at = datetime.now()

        if self.workers > 1 and len(jobs) > 1:
            outcomes = self._extract_parallel(jobs, progress)
        else:
            iterator = tqdm(jobs, desc="Harsanyi 추출") if progress else jobs
            outcomes = [self._guarded(job) for job in iterator]

        outcomes.sort(key=lambda o: o.index)
        success = sum(1 for o in outcomes if o.success)
        result = BatchExtraction(
            total=len(jobs),
            success=success,
            failed=len(jobs) - success,
            outcomes=outcomes,
            started_at=started_at,
            finished_at=datetime.now(),
        )
        logger.info(f"배치 추출: 성공 {success}/{len(jobs)}, 최대 잔차 {result.max_residual:.3e}")
        return result

    def _guarded(self, job: ExtractionJob) -> ExtractionOutcome:
        try:
            return extract_one(self.value_factory, job, self.baseline, self.context)
        except Exception as e:
            return self._failure(job, e)

    @staticmethod
    def _failure(job: ExtractionJob, error: Exception) -> ExtractionOutcome:
        logger.warning(f"표본 {job.index} 추출 실패: {error}")
        return ExtractionOutcome(index=job.index, label=job.label, success=False, error=str(error))

    def _extract_parallel(
        self, jobs: list[ExtractionJob], progress: bool
    ) -> list[ExtractionOutcome]:
        outcomes = []
        with ProcessPoolExecutor(max_workers=self.workers) as executor:
            future_to_job = {
                executor.submit(
                    extract_one, self.value_factory, job, self.baseline, self.context
                ): job
                for job in jobs
            }

            iterator = as_completed(future_to_job)
            if progress:
                iterator = tqdm(iterator, total=len(jobs), desc="Harsanyi 추출")

            for future in iterator:
                job = future_to_job[future]
                try:
                    outcomes.append(future.result())
                except Exception as e:
                    outcomes.append(self._failure(job, e))
        return outcomes
