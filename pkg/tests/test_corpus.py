import numpy as np
import pytest
from scipy.stats import chisquare

from src.errors import ConfigurationError, StreamDecodeError
from src.schemas import SymbolMode, ZipfConfig
from src.services import CorpusService


@pytest.fixture(name="text_file")
def text_file_fixture(tmp_path):
    path = tmp_path / "aabaabb.txt"
    path.write_bytes(b"aabaabb")
    return path


class TestOpenStream:
    """Reading files as symbol streams"""

    def test_bytes_mode(self, text_file):
        """A 7-byte file yields 7 byte symbols"""
        stream = CorpusService.open_stream(text_file)
        assert list(stream) == list(b"aabaabb")
        assert stream.consumed == 7

    def test_read_twice(self, text_file):
        """Two passes over the same file agree"""
        stream = CorpusService.open_stream(text_file)
        assert list(stream) == list(stream)
        assert list(CorpusService.open_stream(text_file)) == list(stream)

    def test_small_chunks(self, text_file):
        """Chunking does not change the symbols"""
        assert list(CorpusService.open_stream(text_file, chunk_size=2)) == list(b"aabaabb")

    def test_codepoints_multibyte(self, tmp_path):
        """A 2-byte UTF-8 character is one code point"""
        path = tmp_path / "e.txt"
        path.write_bytes("é".encode("utf-8"))
        assert list(CorpusService.open_stream(path, SymbolMode.CODEPOINTS)) == [0xE9]
        assert len(list(CorpusService.open_stream(path))) == 2

    def test_codepoints_across_chunks(self, tmp_path):
        """Characters split across reads decode once"""
        path = tmp_path / "mixed.txt"
        text = "aé€𝄞b" * 10
        path.write_bytes(text.encode("utf-8"))
        stream = CorpusService.open_stream(path, SymbolMode.CODEPOINTS, chunk_size=3)
        assert list(stream) == [ord(char) for char in text]

    def test_malformed_utf8_offset(self, tmp_path):
        """An invalid byte reports its offset"""
        path = tmp_path / "bad.txt"
        path.write_bytes(b"abcd\xffef")
        with pytest.raises(StreamDecodeError) as info:
            list(CorpusService.open_stream(path, SymbolMode.CODEPOINTS, chunk_size=3))
        assert info.value.offset == 4

    def test_truncated_utf8_at_end(self, tmp_path):
        """A multibyte sequence cut off by end of file is malformed"""
        path = tmp_path / "cut.txt"
        path.write_bytes(b"ab\xc3")
        with pytest.raises(StreamDecodeError) as info:
            list(CorpusService.open_stream(path, SymbolMode.CODEPOINTS))
        assert info.value.offset == 2

    def test_missing_file(self, tmp_path):
        """Unreadable paths fail when the stream is opened"""
        with pytest.raises(OSError):
            CorpusService.open_stream(tmp_path / "missing.bin")

    def test_from_buffer(self):
        """In-memory text is encoded and streamed like a file"""
        assert list(CorpusService.from_buffer("héllo", SymbolMode.CODEPOINTS)) == [ord(c) for c in "héllo"]
        assert list(CorpusService.from_buffer(b"\x00\x01")) == [0, 1]


class TestZipfStream:
    """Seeded generalized-Zipfian sources"""

    def test_heavy_skew_is_nearly_constant(self):
        """s = 50 over 10 symbols draws essentially only the top rank"""
        stream = list(CorpusService.zipf_stream(ZipfConfig(exponent=50, alphabet=10, length=10_000)))
        assert stream.count(0) >= 9_999

    def test_single_symbol_alphabet(self):
        """alphabet = 1 gives a constant stream"""
        assert set(CorpusService.zipf_stream(ZipfConfig(exponent=1.3, alphabet=1, length=500))) == {0}

    def test_deterministic(self):
        """Same seed, same stream"""
        config = ZipfConfig(exponent=1.0, alphabet=100, length=70_000, seed=5)
        assert list(CorpusService.zipf_stream(config)) == list(CorpusService.zipf_stream(config))

    def test_seed_changes_stream(self):
        """Different seeds give different streams"""
        first = list(CorpusService.zipf_stream(ZipfConfig(exponent=1.0, alphabet=100, length=1_000, seed=1)))
        second = list(CorpusService.zipf_stream(ZipfConfig(exponent=1.0, alphabet=100, length=1_000, seed=2)))
        assert first != second

    def test_length(self):
        """Exactly N symbols, all within the alphabet"""
        stream = list(CorpusService.zipf_stream(ZipfConfig(exponent=0.8, alphabet=7, length=12_345)))
        assert len(stream) == 12_345
        assert min(stream) >= 0 and max(stream) < 7

    def test_probabilities_normalized(self):
        """P(rank k) is proportional to k^-s and sums to one"""
        probabilities = CorpusService.zipf_probabilities(2.0, 4)
        assert probabilities.sum() == pytest.approx(1.0)
        assert probabilities[0] / probabilities[1] == pytest.approx(4.0)

    def test_parse(self):
        """The command-line form s,alphabet,N"""
        config = ZipfConfig.parse("1.5,1000,1e5", seed=9)
        assert (config.exponent, config.alphabet, config.length, config.seed) == (1.5, 1000, 100_000, 9)
        with pytest.raises(ValueError):
            ZipfConfig.parse("1.5,1000")

    @pytest.mark.slow
    def test_frequencies_match_law(self):
        """s = 1, alphabet 1000, N = 10^6: chi-square fit and the top rank within 5 sigma"""
        config = ZipfConfig(exponent=1.0, alphabet=1000, length=1_000_000, seed=11)
        observed = np.bincount(list(CorpusService.zipf_stream(config)), minlength=1000)
        probabilities = CorpusService.zipf_probabilities(1.0, 1000)
        top = probabilities[0]
        assert abs(observed[0] - 1e6 * top) <= 5 * np.sqrt(1e6 * top * (1 - top))
        assert chisquare(observed, 1e6 * probabilities).pvalue > 0.001


class TestWriteZipf:
    """Materializing synthetic streams"""

    def test_byte_file(self, tmp_path):
        """N = 100 over two symbols writes 100 bytes with two values"""
        path = tmp_path / "z.bin"
        written = CorpusService.write_zipf(ZipfConfig(exponent=1.0, alphabet=2, length=100), path)
        data = path.read_bytes()
        assert written == len(data) == 100
        assert set(data) <= {0, 1}

    def test_same_seed_same_file(self, tmp_path):
        """Identical configs produce identical files"""
        config = ZipfConfig(exponent=1.0, alphabet=50, length=5_000, seed=4)
        CorpusService.write_zipf(config, tmp_path / "a.bin")
        CorpusService.write_zipf(config, tmp_path / "b.bin")
        assert (tmp_path / "a.bin").read_bytes() == (tmp_path / "b.bin").read_bytes()

    def test_records(self, tmp_path):
        """Large alphabets need 4-byte little-endian records"""
        config = ZipfConfig(exponent=1.0, alphabet=1000, length=300, seed=2)
        with pytest.raises(ConfigurationError):
            CorpusService.write_zipf(config, tmp_path / "z.bin")
        CorpusService.write_zipf(config, tmp_path / "z.bin", records=True)
        values = np.frombuffer((tmp_path / "z.bin").read_bytes(), dtype="<u4").tolist()
        assert values == list(CorpusService.zipf_stream(config))

    def test_file_reads_back(self, tmp_path):
        """A written byte file streams back the generated symbols"""
        config = ZipfConfig(exponent=1.0, alphabet=200, length=70_000, seed=8)
        path = tmp_path / "z.bin"
        CorpusService.write_zipf(config, path)
        assert list(CorpusService.open_stream(path)) == list(CorpusService.zipf_stream(config))
