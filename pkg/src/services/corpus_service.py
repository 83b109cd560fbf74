import codecs
import io
import logging
from pathlib import Path
from typing import BinaryIO, Callable, Iterable, Iterator, Optional, Union

import numpy as np

from src.config import get_settings
from src.errors import ConfigurationError, StreamDecodeError
from src.models.random_source import RandomSource
from src.schemas import ExperimentConfig, SymbolMode, ZipfConfig

logger = logging.getLogger(__name__)

ZIPF_CHUNK = 65536


class SymbolStream:
    """Iterable of symbol ids; each iteration is an independent pass over the source."""

    def __init__(self, factory: Callable[[], Iterator[int]], mode: SymbolMode, description: str):
        self._factory = factory
        self.mode = mode
        self.description = description
        self.consumed = 0

    def __iter__(self) -> Iterator[int]:
        self.consumed = 0
        for symbol in self._factory():
            self.consumed += 1
            yield symbol

    def __repr__(self) -> str:
        return f"SymbolStream({self.description}, mode={self.mode.value})"


def _read_bytes(handle: BinaryIO, chunk_size: int) -> Iterator[int]:
    while True:
        chunk = handle.read(chunk_size)
        if not chunk:
            return
        yield from chunk


def _read_codepoints(handle: BinaryIO, chunk_size: int) -> Iterator[int]:
    decoder = codecs.getincrementaldecoder("utf-8")(errors="strict")
    offset = 0
    while True:
        chunk = handle.read(chunk_size)
        pending = len(decoder.getstate()[0])
        try:
            text = decoder.decode(chunk, final=not chunk)
        except UnicodeDecodeError as exc:
            raise StreamDecodeError(offset - pending + exc.start, exc.reason) from exc
        for char in text:
            yield ord(char)
        if not chunk:
            return
        offset += len(chunk)


def _reader(mode: SymbolMode) -> Callable[[BinaryIO, int], Iterator[int]]:
    return _read_codepoints if mode is SymbolMode.CODEPOINTS else _read_bytes


class CorpusService:
    @staticmethod
    def open_stream(
        path: Union[str, Path], mode: SymbolMode = SymbolMode.BYTES, chunk_size: Optional[int] = None
    ) -> SymbolStream:
        """
        Stream the symbols of a file without buffering it whole.
        Bytes mode yields one symbol per byte; codepoints mode decodes UTF-8.
        """
        path = Path(path)
        chunk_size = chunk_size or get_settings().read_chunk_size
        read = _reader(mode)
        # fail early on unreadable paths
        with open(path, "rb"):
            pass

        def factory() -> Iterator[int]:
            with open(path, "rb") as handle:
                yield from read(handle, chunk_size)

        return SymbolStream(factory, mode, str(path))

    @staticmethod
    def from_buffer(data: Union[bytes, str], mode: SymbolMode = SymbolMode.BYTES) -> SymbolStream:
        """In-memory stream; text is encoded as UTF-8 first."""
        raw = data.encode("utf-8") if isinstance(data, str) else bytes(data)
        read = _reader(mode)
        chunk_size = get_settings().read_chunk_size

        def factory() -> Iterator[int]:
            yield from read(io.BytesIO(raw), chunk_size)

        return SymbolStream(factory, mode, f"<buffer {len(raw)} bytes>")

    @staticmethod
    def from_symbols(symbols: Iterable[int]) -> SymbolStream:
        symbols = list(symbols)
        return SymbolStream(lambda: iter(symbols), SymbolMode.BYTES, f"<{len(symbols)} symbols>")

    @staticmethod
    def zipf_probabilities(exponent: float, alphabet: int) -> np.ndarray:
        """P(rank k) = k^-s / sum_j j^-s for k = 1..alphabet."""
        weights = np.power(np.arange(1, alphabet + 1, dtype=np.float64), -exponent)
        return weights / weights.sum()

    @staticmethod
    def zipf_stream(config: ZipfConfig) -> SymbolStream:
        """
        i.i.d. Zipfian symbols by inverse CDF on the seeded source.
        Symbol id k-1 stands for rank k, so id 0 is the most frequent.
        """
        cdf = np.cumsum(CorpusService.zipf_probabilities(config.exponent, config.alphabet))
        cdf[-1] = 1.0
        last = config.alphabet - 1

        def factory() -> Iterator[int]:
            generator = RandomSource(config.seed).generator
            remaining = config.length
            while remaining > 0:
                size = min(ZIPF_CHUNK, remaining)
                draws = np.searchsorted(cdf, generator.random(size), side="right")
                yield from np.minimum(draws, last).tolist()
                remaining -= size

        description = f"zipf(s={config.exponent}, alphabet={config.alphabet}, N={config.length}, seed={config.seed})"
        return SymbolStream(factory, SymbolMode.BYTES, description)

    @staticmethod
    def write_zipf(config: ZipfConfig, path: Union[str, Path], records: bool = False) -> int:
        """
        Materialize a Zipfian stream: one byte per symbol, or 4-byte
        little-endian records when the alphabet does not fit in a byte.
        Returns the number of bytes written.
        """
        if not records and config.alphabet > 256:
            raise ConfigurationError(
                f"alphabet {config.alphabet} does not fit in one byte; use record mode"
            )
        dtype = np.dtype("<u4") if records else np.uint8
        written = 0
        buffer: list[int] = []
        with open(path, "wb") as handle:
            for symbol in CorpusService.zipf_stream(config):
                buffer.append(symbol)
                if len(buffer) == ZIPF_CHUNK:
                    written += handle.write(np.asarray(buffer, dtype=dtype).tobytes())
                    buffer.clear()
            if buffer:
                written += handle.write(np.asarray(buffer, dtype=dtype).tobytes())
        logger.info("Wrote %d symbols (%d bytes) to %s", config.length, written, path)
        return written

    @staticmethod
    def stream_for(config: ExperimentConfig) -> SymbolStream:
        """The input stream an experiment describes: a file or a Zipf source."""
        if config.zipf is not None:
            return CorpusService.zipf_stream(config.zipf)
        return CorpusService.open_stream(config.input_path, config.mode, config.read_chunk_size)
