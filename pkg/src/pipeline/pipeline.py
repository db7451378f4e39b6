import json
import logging
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Optional

from src.cluster.modularity import greedy_modularity, modularity
from src.depgraph.importance import compute_importance, uniform_importance
from src.depgraph.weighting import build_file_graph
from src.entities.architecture import Architecture
from src.entities.config import RunConfig
from src.entities.execution import Execution
from src.entities.file_graph import FileGraph
from src.entities.folder_tree import FolderTree
from src.entities.model import DependencyGraph
from src.entities.results import FusionWeights
from src.entities.type_weights import DEFAULT_WEIGHTS_FILE, TypeWeights
from src.errors import InputError, PipelineError
from src.folders.filtering import filter_folders, folder_partition
from src.fusion.coefficients import fuse
from src.fusion.recovery import recover_dep_only, recover_text_only
from src.fusion.weights import assign_weights
from src.ingest.dependencies import adapt_depends_output, parse_dependency_json
from src.ingest.folders import scan_folders
from src.ingest.text_extraction import extract_text, preprocess_words, write_skip_report
from src.pipeline.cache import ArtifactCache
from src.textual.correlation import TopicCorrelations
from src.textual.lda import embed_corpus, train_lda
from src.textual.tfidf import weigh_words, weighted_documents
from src.utils import file_digest, text_digest

logger = logging.getLogger(__name__)


def load_graph(path: Path, deps_format: str = "canonical") -> DependencyGraph:
    if deps_format == "depends":
        return adapt_depends_output(path)
    return parse_dependency_json(path)


@dataclass
class Recovery:
    architecture: Architecture
    fused: FileGraph
    weights: FusionWeights
    modularity: float
    source_architectures: dict[str, Architecture] = field(default_factory=dict)


class RecoveryPipeline:
    """ingest -> depgraph -> textual -> folders -> fusion -> cluster for one project."""

    def __init__(self, config: RunConfig):
        self.config = config
        self.output_dir = Path(config.output_dir)
        self.cache = ArtifactCache(self.output_dir / "cache")
        self.skipped: list[tuple[str, str]] = []

    # -- inputs ---------------------------------------------------------------

    @cached_property
    def graph(self) -> DependencyGraph:
        if self.config.deps is None:
            raise InputError("no dependency file given (set 'deps' or pass --deps)")
        path = Path(self.config.deps)
        if not path.is_file():
            raise InputError(f"dependency file not found: {path}")
        return load_graph(path, self.config.deps_format)

    @cached_property
    def type_weights(self) -> TypeWeights:
        path = Path(self.config.type_weights) if self.config.type_weights else DEFAULT_WEIGHTS_FILE
        try:
            return TypeWeights.load(path)
        except OSError as e:
            raise InputError(f"cannot read type weights {path}: {e}") from e
        except ValueError as e:
            raise InputError(f"{path}: {e}") from e

    @cached_property
    def digests(self) -> dict[str, str]:
        graph = self.graph
        digests = {"deps": file_digest(self.config.deps)}
        digests["type_weights"] = file_digest(
            self.config.type_weights if self.config.type_weights else DEFAULT_WEIGHTS_FILE
        )
        root = self.config.source_root
        if root is not None:
            for file_id in graph.file_ids:
                path = Path(root) / file_id
                if path.is_file():
                    digests[f"source/{file_id}"] = file_digest(path)
        return digests

    def _key(self, *settings: str) -> str:
        return text_digest(json.dumps(self.digests, sort_keys=True), *settings)

    # -- intermediate artifacts ---------------------------------------------

    @cached_property
    def ranked_graph(self) -> DependencyGraph:
        ipr = self.config.ipr
        if not self.config.fusion.use_entity_importance:
            return uniform_importance(self.graph)
        return compute_importance(self.graph, ipr.damping, ipr.tol, ipr.max_iter)

    @cached_property
    def file_graph(self) -> FileGraph:
        settings = json.dumps(
            {"ipr": self.config.ipr.model_dump(), "fusion": self.config.fusion.model_dump()}, sort_keys=True
        )
        key = self._key("file_graph", settings)
        cached = self.cache.get("file_graph", key)
        if cached is not None:
            return FileGraph.from_json_dict(cached)
        ipr, fusion = self.config.ipr, self.config.fusion
        fg = build_file_graph(
            self.graph,
            self.type_weights,
            ipr.damping,
            ipr.tol,
            ipr.max_iter,
            use_entity_importance=fusion.use_entity_importance,
            use_type_weights=fusion.use_type_weights,
        )
        self.cache.put("file_graph", key, fg.to_json_dict())
        return fg

    @cached_property
    def correlations(self) -> Optional[TopicCorrelations]:
        if not self.config.fusion.use_text:
            return None
        if self.config.source_root is None:
            raise InputError("text information needs 'source_root' (or disable it with --no-text)")
        settings = json.dumps(
            {
                "ipr": self.config.ipr.model_dump(),
                "lda": self.config.lda.model_dump(),
                "text": self.config.text.model_dump(),
                "importance": self.config.fusion.use_entity_importance,
                "seed": self.config.seed,
            },
            sort_keys=True,
        )
        key = self._key("correlations", settings)
        cached = self.cache.get("correlations", key)
        if cached is not None:
            self.skipped = [tuple(s) for s in cached["skipped"]]
            return TopicCorrelations.from_json_dict(cached["correlations"])

        skipped: list[tuple[str, str]] = []
        occs = extract_text(self.config.source_root, self.graph, skipped)
        occs = preprocess_words(occs, self.config.text.stop_words)
        occs = weigh_words(occs, self.config.source_kind_weights, self.ranked_graph)
        docs = {file_id: {} for file_id in self.graph.file_ids}
        docs.update(weighted_documents(occs))

        lda = self.config.lda
        model = train_lda(
            docs, lda.topics, self.config.seed, lda.iterations, lda.alpha, lda.beta, lda.quantum, lda.passes
        )
        correlations = TopicCorrelations.from_embeddings(embed_corpus(model))
        self.skipped = sorted(skipped)
        self.cache.put(
            "correlations", key, {"correlations": correlations.to_json_dict(), "skipped": self.skipped}
        )
        return correlations

    @cached_property
    def filtered_tree(self) -> FolderTree:
        tree = scan_folders(self.config.source_root, self.file_graph.nodes)
        return filter_folders(tree, self.file_graph)

    # -- recovery -------------------------------------------------------------

    def recover(self, resolution: Optional[float] = None) -> Recovery:
        gamma = self.config.resolution if resolution is None else resolution
        fusion = self.config.fusion
        fg = self.file_graph

        a_dep = recover_dep_only(fg, gamma)
        sources = {"dependency": a_dep}

        correlations = self.correlations
        a_text = None
        if correlations is not None:
            a_text = recover_text_only(correlations, len(a_dep))
            sources["text"] = a_text
        else:
            correlations = TopicCorrelations.neutral(fg.nodes)

        a_folder = None
        if fusion.use_folder:
            a_folder = folder_partition(self.filtered_tree)
            sources["folder"] = a_folder

        weights = assign_weights(a_dep, a_text, a_folder)
        logger.info(f"[FUSION] w_text={weights.w_text:.4f} w_folder={weights.w_folder:.4f}")
        fused = fuse(
            fg, correlations, self.filtered_tree, weights,
            fusion.corr_threshold, fusion.coef_t_floor, fusion.folder_clamp,
        )

        architecture = greedy_modularity(fused, gamma)
        quality = modularity(fused, architecture, gamma) if fused.total_weight > 0 else 0.0
        logger.info(f"[CLUSTER] resolution {gamma}: {len(architecture)} clusters, Q={quality:.4f}")
        return Recovery(architecture, fused, weights, quality, sources)

    def provenance(self, result: Recovery) -> Execution:
        return Execution(
            config=self.config.to_flat(),
            digests=dict(sorted(self.digests.items())),
            fusion_weights={"w_text": result.weights.w_text, "w_folder": result.weights.w_folder},
            cluster_count=len(result.architecture),
            modularity=result.modularity,
            source_clusters={name: len(arch) for name, arch in result.source_architectures.items()},
            skipped=len(self.skipped),
        )

    def write_outputs(self, result: Recovery) -> None:
        out = self.output_dir
        try:
            out.mkdir(parents=True, exist_ok=True)
            (out / "architecture.rsf").write_text(result.architecture.to_rsf(), encoding="utf-8", newline="\n")
            (out / "architecture.json").write_text(result.architecture.to_json(), encoding="utf-8", newline="\n")
            (out / "provenance.json").write_text(self.provenance(result).to_json(), encoding="utf-8", newline="\n")
            write_skip_report(self.skipped, out / "skipped.txt")
        except OSError as e:
            raise PipelineError("PIPELINE", f"cannot write outputs to {out}: {e}") from e
        logger.info(f"[PIPELINE] wrote architecture and provenance to {out}")
