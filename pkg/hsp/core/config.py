from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """
    Settings class to retrieve environment variables.
    """

    LOG_LEVEL: str = "WARNING"
    LOG_FORMAT: str = "%(asctime)s %(levelname)s %(name)s: %(message)s"

    # Solver defaults
    RANDOM_INIT_DRAWS: int = 1000    # best-of-m random initialization
    IMPROVEMENT_RTOL: float = 1e-12    # deltas below this fraction of the objective are not moves

    # Exact oracle
    EXACT_SUBSET_LIMIT: int = 10_000_000

    # Benchmark harness
    BENCH_WORKERS: int = 1

    # BBV generator defaults
    BBV_M: int = 2
    BBV_W0: float = 1.0
    BBV_DELTA: float = 1.0

    model_config = SettingsConfigDict(
        env_file='.env',
        env_prefix='HSP_',
        extra='ignore',
    )


Config = Settings()
