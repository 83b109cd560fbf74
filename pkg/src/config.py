from functools import lru_cache

from dotenv import load_dotenv
from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

load_dotenv()


class Settings(BaseSettings):
    """Defaults for every command; each value can be overridden by an
    NGRAM_* environment variable, a .env file, or a command-line flag."""

    model_config = SettingsConfigDict(env_prefix="NGRAM_", env_file=".env", extra="ignore")

    log_level: str = "INFO"
    seed: int = Field(42, ge=0, lt=2**64)
    width: int = Field(19, ge=1, le=64)
    capacity: int = Field(1024, ge=1)
    runs: int = Field(100, ge=1)
    oracle_max_keys: int = Field(2**26, ge=1)
    zipf_alphabet: int = Field(1000, ge=1)
    zipf_exponent: float = Field(1.0, gt=0)
    read_chunk_size: int = Field(65536, ge=1)
    record_timing: bool = True
    workers: int = Field(1, ge=1)
    rng_block_size: int = Field(4096, ge=1)


@lru_cache
def get_settings() -> Settings:
    """Get the process-wide settings instance"""
    return Settings()
