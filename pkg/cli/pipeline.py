import inspect
import json
import logging
from functools import cached_property
from pathlib import Path
from typing import Any, Optional

from pydantic import create_model

from cli.commands import Command, command, command_name, is_command
from cli.config import PipelineConfig, parse_rules
from cli.formats import ReportFormat, print_table, write_report
from clustering.iterative import emit_labels, iterative_cluster, select_in_scope, singleton_units
from clustering.pairs import generate_pairs
from corpus.authority import link_authority
from corpus.builder import build_corpus
from corpus.models import Corpus, TruthLabels
from corpus.reader import (
    parse_corpus,
    read_authority_profiles,
    read_pairs_tsv,
    read_supplemental_citations,
    read_truth_labels,
    write_corpus_tsv,
    write_pairs_tsv,
    write_truth_labels,
)
from disambiguator.classifiers import load_model, save_model, train as train_classifier
from disambiguator.features import FeatureExtractor
from disambiguator.hac import GridMode, HacConfig, block_mean_grid, disambiguate as hac_disambiguate, score_blocks, select_threshold, uniform_grid
from disambiguator.pairs import block_map, build_pairs, summarize_pairs, write_instance_records, write_pair_features
from disambiguator.preprocess import load_stopwords
from evaluation.blocks import block_stats, cluster_size_distribution, random_subset
from evaluation.pairwise import pairwise_metrics
from evaluation.tags import tag_ratios
from matching.accuracy import evaluate_rule
from matching.rules import Feature, candidate_rules
from synth.generator import generate, summarize

logger = logging.getLogger(__name__)


class Pipeline:
    """Config-driven pipeline; every @command method is exposed as a subcommand."""

    def __init__(self, config: PipelineConfig, format: ReportFormat = ReportFormat.CSV) -> None:
        self.config = config
        self.format = format
        self.outputs: list[Path] = []
        self._commands = self._get_commands_from_decorated_methods()

    @property
    def commands(self) -> list[Command]:
        return self._commands

    @property
    def out(self) -> Path:
        return self.config.output_dir

    def run(self, name: str, args: Optional[dict[str, Any]] = None) -> list[Path]:
        """Validate args against the command's schema, run it and write the run manifest."""
        spec = next((c for c in self._commands if c.name == name), None)
        if spec is None:
            raise ValueError(f"Unknown command '{name}'")
        validated = spec.input_schema.model_validate(args or {})
        self.outputs = []
        method = getattr(self, name.replace("-", "_"))
        method(**validated.model_dump())
        self._write_manifest(name, validated.model_dump(mode="json"))
        return self.outputs

    def _get_commands_from_decorated_methods(self) -> list[Command]:
        commands = []
        for attr_name in dir(self):
            if attr_name.startswith("_") or isinstance(getattr(type(self), attr_name, None), (property, cached_property)):
                continue
            attr = getattr(self, attr_name)
            if is_command(attr):
                sig = inspect.signature(attr)
                fields = {name: (param.annotation, param.default) for name, param in sig.parameters.items() if name != "self"}
                commands.append(Command(
                    name=command_name(attr.__name__),
                    description=inspect.getdoc(attr) or "",
                    input_schema=create_model(f"{attr.__name__}Input", **fields),
                ))
        return commands

    # -- shared inputs -------------------------------------------------------------

    def _build(self, path: Optional[Path]) -> Corpus:
        if path is None:
            raise ValueError("No corpus path configured (paths.corpus)")
        parsed = parse_corpus(path, self.config.paths.corpus_format)
        supplemental = read_supplemental_citations(self.config.paths.supplemental_citations) if self.config.paths.supplemental_citations else None
        return build_corpus(parsed.records, supplemental, self.config.email_patterns)

    @cached_property
    def corpus(self) -> Corpus:
        return self._build(self.config.paths.corpus)

    @cached_property
    def test_corpus(self) -> Corpus:
        if self.config.paths.test_corpus is None:
            return self.corpus
        return self._build(self.config.paths.test_corpus)

    @cached_property
    def truth(self) -> Optional[TruthLabels]:
        paths = self.config.paths
        if paths.truth_labels is not None:
            return read_truth_labels(paths.truth_labels)
        if paths.authority_profiles is not None:
            return link_authority(self.corpus, read_authority_profiles(paths.authority_profiles))
        return None

    @cached_property
    def test_truth(self) -> TruthLabels:
        paths = self.config.paths
        if paths.test_truth_labels is not None:
            return read_truth_labels(paths.test_truth_labels)
        if paths.test_corpus is None and self.truth is not None:
            return self.truth
        raise ValueError("No truth labels for the evaluation corpus (paths.test_truth_labels)")

    @cached_property
    def stopwords(self) -> frozenset[str]:
        return load_stopwords(self.config.paths.stopwords)

    def _report(self, name: str, rows: list, title: Optional[str] = None) -> None:
        path = write_report(rows, self.out / name, self.format, self.config.config_hash)
        self.outputs.append(path)
        if title:
            print_table(title, rows)

    def _write_manifest(self, name: str, args: dict[str, Any]) -> None:
        manifest = {
            "command": name,
            "args": args,
            "config_hash": self.config.config_hash,
            "outputs": sorted(str(path.relative_to(self.out)) for path in self.outputs if path.is_relative_to(self.out)),
        }
        path = self.out / f"manifest_{name}.json"
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", encoding="utf-8") as f:
            json.dump(manifest, f, indent=2, sort_keys=True)
            f.write("\n")

    # -- commands ------------------------------------------------------------------

    @command
    def ingest(self) -> None:
        """Parse the corpus, extract name instances, emails, coauthors and self-citation candidates."""
        corpus = self.corpus
        path = self.out / "corpus.json"
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", encoding="utf-8") as f:
            f.write(corpus.model_dump_json(indent=1))
            f.write("\n")
        self.outputs.append(path)
        stats = corpus.stats
        rows = [
            {"statistic": "records", "value": stats.records},
            {"statistic": "instances", "value": stats.instances},
            {"statistic": "instances_with_coauthors", "value": stats.instances_with_coauthors},
            {"statistic": "citation_edges", "value": stats.citation_edges},
            {"statistic": "self_citation_candidates", "value": stats.self_citation_candidates},
            {"statistic": "emails_seen", "value": stats.email.emails_seen},
            {"statistic": "emails_assigned", "value": stats.email.assigned},
            {"statistic": "emails_unmatched", "value": stats.email.unmatched},
            {"statistic": "emails_tied", "value": stats.email.tied},
            {"statistic": "multi_email_instances", "value": stats.email.multi_email_instances},
        ]
        self._report("ingest_stats", rows, "Ingest")

    @command
    def validate_rules(self) -> None:
        """Accuracy of every matching scheme against truth labels, one table per feature."""
        if self.truth is None or not len(self.truth):
            raise ValueError("validate-rules needs truth labels (paths.truth_labels or paths.authority_profiles)")
        rows = []
        for feature in Feature:
            for rule in candidate_rules(feature):
                units = singleton_units(self.corpus, select_in_scope(self.corpus, [rule]))
                pairs = generate_pairs(units, rule, self.corpus, self.config.email_within_block)
                report = evaluate_rule(rule, pairs.pairs, self.truth)
                rows.append({
                    "feature": feature.value,
                    "scheme": rule.scheme.value,
                    "min_shared": rule.min_shared,
                    "match": report.match_pairs,
                    "evaluable": report.evaluable_pairs,
                    "true_match": report.true_match,
                    "accuracy": report.accuracy,
                    "flags": report.flags,
                })
        self._report("rule_accuracy", rows, "Matching rule accuracy")

    @command
    def label(self, rules: Optional[str] = None, name: str = "labels") -> None:
        """Iteratively cluster in-scope instances and write the labels and the stage log."""
        rule_list = parse_rules(rules) if rules else self.config.rules
        state = iterative_cluster(self.corpus, rule_list, self.truth, self.config.email_within_block)
        labels = emit_labels(state)
        path = self.out / f"{name}.tsv"
        write_pairs_tsv(list(labels.items()), path)
        self.outputs.append(path)

        rows = []
        for record in state.stage_log:
            report = record.report
            rows.append({
                "stage": record.stage,
                "pass": record.pass_index,
                "feature": record.feature.value,
                "scheme": record.scheme.value,
                "min_shared": record.min_shared,
                "pairs": record.pairs,
                "merges": record.merges,
                "clusters": record.clusters,
                "precision": report.precision if report else None,
                "recall": report.recall if report else None,
                "f1": report.f1 if report else None,
            })
        self._report(f"{name}_stages", rows, "Labeling stages")
        logger.info(f"Labeled {len(labels)} instances into {len(state.clusters)} clusters")

    @command
    def train(self, labels: Optional[str] = None) -> None:
        """Train the configured classifiers on labeled pairs and tune each one's HAC threshold on the dev split."""
        ml = self.config.ml
        label_map = dict(read_pairs_tsv(Path(labels) if labels else self.out / "labels.tsv"))
        extractor = FeatureExtractor(self.corpus, self.stopwords)
        split = build_pairs(label_map, self.corpus, extractor, ml.train_ratio, ml.seed, ml.full_forename_blocks)

        for split_name, pairs in (("train", split.train), ("dev", split.dev)):
            path = self.out / f"pairs_{split_name}.tsv"
            write_pair_features(pairs, path)
            self.outputs.append(path)
        path = self.out / "instances.txt"
        write_instance_records(label_map, extractor, path)
        self.outputs.append(path)
        self._report("pair_summary", summarize_pairs(split), "Training data")

        dev_blocks = block_map(self.corpus, split.dev_labels, ml.full_forename_blocks)
        rows = []
        for kind in ml.classifiers:
            model = train_classifier(kind, split.train, ml.training)
            scored = score_blocks(model, extractor, dev_blocks)
            grid = block_mean_grid(scored) if ml.grid_mode == GridMode.BLOCK_MEANS else uniform_grid(ml.grid_step)
            hac = select_threshold(scored, split.dev_labels, grid)
            model.hac_threshold = hac.threshold
            path = self.out / f"model_{kind.value}.json"
            save_model(model, path, self.config.config_hash)
            self.outputs.append(path)
            rows.append({"classifier": kind.value, "threshold": hac.threshold, "dev_f1": hac.dev_f1})
        self._report("thresholds", rows, "HAC thresholds")

    @command
    def disambiguate(self) -> None:
        """Cluster every block of the evaluation corpus with each trained model."""
        ml = self.config.ml
        extractor = FeatureExtractor(self.test_corpus, self.stopwords)
        blocks = block_map(self.test_corpus, (i.instance_id for i in self.test_corpus.instances), ml.full_forename_blocks)
        for kind in ml.classifiers:
            model = load_model(self.out / f"model_{kind.value}.json")
            config = HacConfig(threshold=model.hac_threshold if model.hac_threshold is not None else HacConfig().threshold)
            labels = hac_disambiguate(model, extractor, blocks, config)
            path = self.out / f"partition_{kind.value}.tsv"
            write_pairs_tsv(list(labels.items()), path)
            self.outputs.append(path)

    @command
    def evaluate(self) -> None:
        """Pairwise metrics of each model's partition and of label-only iterative clustering on the evaluation corpus."""
        scope = [instance.instance_id for instance in self.test_corpus.instances]
        blocks = {i.instance_id: i.block_key for i in self.test_corpus.instances} if self.config.evaluation.same_block_pairs else None
        methods: list[tuple[str, dict[str, str]]] = []
        for kind in self.config.ml.classifiers:
            methods.append((kind.value, dict(read_pairs_tsv(self.out / f"partition_{kind.value}.tsv"))))
        state = iterative_cluster(self.test_corpus, self.config.rules, email_within_block=self.config.email_within_block)
        methods.append(("iterative_clustering", emit_labels(state)))

        rows = []
        for method, labels in methods:
            report = pairwise_metrics(labels, self.test_truth, scope=scope, blocks=blocks)
            rows.append({"method": method, **report.model_dump()})
        self._report("evaluation", rows, "Pairwise evaluation")

    @command
    def synth(self) -> None:
        """Generate a synthetic corpus with truth labels."""
        result = generate(self.config.synth)
        corpus_path = self.out / "synth" / "corpus.tsv"
        truth_path = self.out / "synth" / "truth.tsv"
        write_corpus_tsv(result.records, corpus_path)
        write_truth_labels(result.truth, truth_path)
        self.outputs.extend([corpus_path, truth_path])

        summary = summarize(build_corpus(result.records, patterns=self.config.email_patterns), result.truth)
        path = self.out / "synth" / "summary.json"
        with path.open("w", encoding="utf-8") as f:
            f.write(summary.model_dump_json(indent=2, exclude={"blocks": {"block_sizes"}}))
            f.write("\n")
        self.outputs.append(path)

    @command
    def report(self, labels: Optional[str] = None) -> None:
        """Representativeness of the labeled instances: block sizes, power-law fits, cluster sizes and tag ratios."""
        evaluation = self.config.evaluation
        label_map = dict(read_pairs_tsv(Path(labels) if labels else self.out / "labels.tsv"))
        whole = {instance.instance_id: instance.block_key for instance in self.corpus.instances}
        sets = {
            "whole": whole,
            "labeled": {i: whole[i] for i in label_map},
            "random": {i: whole[i] for i in random_subset(whole, len(label_map), self.config.ml.seed)},
        }

        ratio_rows, fit_rows = [], []
        for set_name, blocks in sets.items():
            stats = block_stats(blocks, evaluation.fit_range)
            ratio_rows.extend({"set": set_name, "n": n, "ratio": r} for n, r in stats.ratios.items())
            fit_rows.append({"set": set_name, "instances": stats.instances, "blocks": stats.blocks, **stats.fit.model_dump()})
        self._report("block_ratios", ratio_rows)
        self._report("power_law_fits", fit_rows, "Block size power-law fits")

        distribution = cluster_size_distribution(label_map, evaluation.cluster_size_open_bucket)
        self._report("cluster_sizes", distribution.rows, "Instances per cluster")

        if self.config.paths.tag_map is not None:
            tags = dict(read_pairs_tsv(self.config.paths.tag_map))
            for set_name in ("labeled", "random"):
                tag_report = tag_ratios(sets[set_name], whole, tags, evaluation.top_k_tags)
                rows = [{**row.model_dump(), "difference": row.difference} for row in tag_report.rows]
                self._report(f"tag_ratios_{set_name}", rows, f"Tag ratios: {set_name} vs whole")
