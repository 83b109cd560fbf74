# This file makes the services directory a package
from src.services.bounds_service import BoundsService
from src.services.corpus_service import CorpusService, SymbolStream
from src.services.exact_service import ExactService
from src.services.experiment_service import ExperimentService
from src.services.sketch_service import SketchService

__all__ = [
    "BoundsService",
    "CorpusService",
    "SymbolStream",
    "ExactService",
    "ExperimentService",
    "SketchService",
]
