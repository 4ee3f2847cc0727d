"""Command-line interface: every engine capability behind one binary.

All I/O is plain text. Inputs are fully parsed before anything is written;
file outputs go through a temp-file rename so a failure never leaves a
partial file behind. Data errors exit with code 1 and a single
``ERROR:<kind>: <message>`` line on stderr; usage errors exit with code 2.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
import tempfile
from pathlib import Path

import numpy as np

from .bridge import DEFAULT_TEMPLATE, bridge_vocabulary, load_embeddings
from .errors import HierLabelError, ParseError
from .formats import dump_matrix, format_value, load_matrix, load_vector
from .hierarchy import expand_labels, load_hierarchy, load_vocabulary
from .loss import total_objective
from .pseudo import (
    DEFAULT_THRESHOLD,
    PredictionMatrix,
    WeightedBoxLabels,
    WeightedImageLabel,
    generate_weighted_labels,
)
from .sim import parse_sim_config, threshold_sweep, train_from_config, world_from_config
from .validation import check_prob_vector

log = logging.getLogger(__name__)


def _emit(text: str, out_path: str | None) -> None:
    """Write atomically to a file, or to stdout when no path is given."""
    if out_path is None:
        sys.stdout.write(text)
        return
    target = Path(out_path)
    fd, tmp_name = tempfile.mkstemp(dir=target.parent or Path("."), prefix=target.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(text)
        os.replace(tmp_name, target)
    except BaseException:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise


def _read_names(path: str) -> list[str]:
    try:
        lines = Path(path).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    names = [line.strip() for line in lines if line.strip() and not line.lstrip().startswith("#")]
    if not names:
        raise ParseError(f"{path} declares no class names")
    return names


def _cmd_expand(args) -> int:
    graph = load_hierarchy(args.hierarchy)
    vocab = load_vocabulary(args.vocab, graph)
    labels = load_matrix(args.labels)
    expanded = np.stack(
        [expand_labels(graph, vocab, row, args.max_depth) for row in labels]
    )
    _emit(dump_matrix(expanded), args.out)
    return 0


def _cmd_pseudo_label(args) -> int:
    graph = load_hierarchy(args.hierarchy)
    vocab = load_vocabulary(args.vocab, graph)
    preds = PredictionMatrix(load_matrix(args.preds), normalized=args.normalized)
    y_cls = load_vector(args.labels, name="y_cls")
    p_image = None
    if args.image_probs is not None:
        p_image = check_prob_vector(load_vector(args.image_probs, name="p_image"), name="p_image")

    box, image = generate_weighted_labels(
        preds,
        y_cls,
        graph,
        vocab,
        args.threshold,
        p_image=p_image,
        image_score_mode=args.image_score,
        trust_confirmed=args.trust_confirmed,
        max_depth=args.max_depth,
    )
    sections = [
        ("box_labels", dump_matrix(box.labels)),
        ("box_weights", dump_matrix(box.weights)),
        ("image_label", dump_matrix(image.label)),
        ("image_weights", dump_matrix(image.weights)),
        ("kept_indices", " ".join(str(int(i)) for i in box.kept_indices) + "\n"),
    ]
    _emit("".join(f"# {name}\n{body}" for name, body in sections), args.out)
    return 0


def _cmd_loss(args) -> int:
    probs = load_matrix(args.preds)
    box = WeightedBoxLabels(
        labels=load_matrix(args.labels),
        weights=load_matrix(args.weights),
        kept_indices=np.arange(probs.shape[0]),
    )
    image_args = (args.image_probs, args.image_label, args.image_weights)
    if any(a is not None for a in image_args) and not all(a is not None for a in image_args):
        raise ParseError("--image-probs, --image-label and --image-weights must be given together")
    if args.image_probs is not None:
        p_image = load_vector(args.image_probs, name="p_image")
        image = WeightedImageLabel(
            label=load_vector(args.image_label, name="image label"),
            weights=load_vector(args.image_weights, name="image weights"),
        )
        batch = [(probs, box, p_image, image)]
    else:
        empty = WeightedImageLabel(label=np.zeros(0, dtype=int), weights=np.ones(0))
        batch = [(probs, box, np.zeros(0), empty)]
    breakdown = total_objective(args.det, batch, reduction=args.reduction)
    lines = [
        f"det_loss {format_value(breakdown.det_loss)}",
        f"box_loss {format_value(breakdown.box_loss)}",
        f"image_loss {format_value(breakdown.image_loss)}",
        f"total {format_value(breakdown.total)}",
    ]
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_bridge(args) -> int:
    names = _read_names(args.test_vocab)
    graph = load_hierarchy(args.hierarchy)
    table = load_embeddings(args.embeddings) if args.embeddings is not None else None
    matches = bridge_vocabulary(
        names,
        graph,
        table,
        template=args.template,
        mock_seed=args.mock_seed,
        mock_dim=args.dim,
    )
    rows = [
        "\t".join((m.test_name, m.synset, m.lemma, format_value(m.similarity), m.prompt))
        for m in matches
    ]
    _emit("\n".join(rows) + "\n", args.out)
    return 0


def _trace_text(result) -> str:
    lines = ["iter\tdet_loss\tbox_loss\timage_loss\ttotal"]
    for i, entry in enumerate(result.trace):
        lines.append(
            "\t".join(
                (
                    str(i),
                    format_value(entry.det_loss),
                    format_value(entry.box_loss),
                    format_value(entry.image_loss),
                    format_value(entry.total),
                )
            )
        )
    lines += [
        "# summary",
        f"method\t{result.method}",
        f"iterations\t{result.iterations}",
        f"threshold\t{format_value(result.threshold)}",
        f"seed\t{result.seed}",
        f"final_accuracy\t{format_value(result.final_accuracy)}",
    ]
    return "\n".join(lines) + "\n"


def _cmd_simulate(args) -> int:
    cfg = parse_sim_config(args.config)
    log.info("simulating method=%s iters=%d seed=%d", cfg.method, cfg.iters, cfg.seed)
    result = train_from_config(cfg)
    _emit(_trace_text(result), args.out)
    return 0


def _cmd_sweep(args) -> int:
    cfg = parse_sim_config(args.config)
    try:
        t_values = [float(v) for v in args.t_values.split(",") if v.strip()]
    except ValueError:
        raise ParseError(f"--t-values must be comma-separated numbers, got {args.t_values!r}") from None
    if not t_values:
        raise ParseError("--t-values must name at least one threshold")
    world = world_from_config(cfg)
    pairs = threshold_sweep(
        world,
        t_values,
        cfg.iters,
        cfg.lr,
        cfg.seed,
        reduction=cfg.reduction,
        trust_confirmed=cfg.trust_confirmed,
        init_scale=cfg.init_scale,
    )
    rows = [f"{format_value(t)}\t{format_value(acc)}" for t, acc in pairs]
    _emit("\n".join(rows) + "\n", args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hierlabel",
        description="Hierarchy-aware weak-supervision label engine.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "expand",
        help="expand binary label rows through the hierarchy closure",
        description="Read a label matrix (rows of 0/1, one per image) and set the bit of "
        "every vocabulary class whose synset is an ancestor or descendant of a labeled class. "
        "Matrix files start with an 'N C' header followed by N rows of C decimals.",
    )
    p.add_argument("--hierarchy", required=True, help="hierarchy file (N/E records)")
    p.add_argument("--vocab", required=True, help="vocabulary file (name[TAB synset] per line)")
    p.add_argument("--labels", required=True, help="binary label matrix file")
    p.add_argument("--max-depth", type=int, default=None, help="cap hierarchy hops per direction")
    p.add_argument("--out", default=None, help="output path (default: stdout)")
    p.set_defaults(func=_cmd_expand)

    p = sub.add_parser(
        "pseudo-label",
        help="turn proposal probabilities into merged, weighted pseudo labels",
        description="Compose expansion, confidence filtering, per-row argmax, label merging, "
        "and reliability weighting for one image. Output is five '# name'-headed sections: "
        "box_labels, box_weights, image_label, image_weights (matrix format), and kept_indices "
        "(space-separated original row indices).",
    )
    p.add_argument("--hierarchy", required=True)
    p.add_argument("--vocab", required=True)
    p.add_argument("--preds", required=True, help="N x C probability matrix file")
    p.add_argument("--labels", required=True, help="1 x C raw image label file")
    p.add_argument("-t", "--threshold", type=float, default=DEFAULT_THRESHOLD)
    p.add_argument("--normalized", action="store_true", help="rows of --preds sum to 1")
    p.add_argument("--image-score", choices=("max", "mean"), default="max",
                   help="reduction for the image-level score when --image-probs is absent")
    p.add_argument("--image-probs", default=None, help="optional 1 x C image score file")
    p.add_argument("--trust-confirmed", action="store_true",
                   help="expanded classes confirmed by a row's argmax keep weight 1")
    p.add_argument("--max-depth", type=int, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_pseudo_label)

    p = sub.add_parser(
        "loss",
        help="evaluate the weighted box/image losses and their total",
        description="Read probability, label, and weight matrices and print the loss "
        "breakdown as labeled decimal fields, one per line.",
    )
    p.add_argument("--preds", required=True, help="N x C probability matrix file")
    p.add_argument("--labels", required=True, help="N x C binary label matrix file")
    p.add_argument("--weights", required=True, help="N x C weight matrix file")
    p.add_argument("--image-probs", default=None, help="1 x C image score file")
    p.add_argument("--image-label", default=None, help="1 x C binary image label file")
    p.add_argument("--image-weights", default=None, help="1 x C image weight file")
    p.add_argument("--det", type=float, default=0.0, help="supervised loss value to add")
    p.add_argument("--reduction", choices=("sum", "mean"), default="sum")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_loss)

    p = sub.add_parser(
        "bridge",
        help="match test class names to hierarchy synsets and emit prompts",
        description="For each test name, find the synset with the most cosine-similar lemma "
        "and emit a prompt from that lemma. Embeddings come from a file "
        "(string TAB space-separated floats per line) or the deterministic mock generator. "
        "Output rows: name, synset, lemma, similarity, prompt (tab-separated).",
    )
    p.add_argument("--test-vocab", required=True, help="one class name per line")
    p.add_argument("--hierarchy", required=True)
    p.add_argument("--embeddings", default=None, help="precomputed embedding table file")
    p.add_argument("--mock-seed", type=int, default=None, help="enable deterministic mock embeddings")
    p.add_argument("--dim", type=int, default=None, help="mock embedding dimension (no table)")
    p.add_argument("--template", default=DEFAULT_TEMPLATE, help="prompt template with one {}")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_bridge)

    p = sub.add_parser(
        "simulate",
        help="run the seeded self-training simulator",
        description="Read a key=value config (keys: B, L, F, sigma, n_images, proposals, "
        "coarseness, method, iters, lr, t, seed, and optional det_fraction, second_leaf_prob, "
        "test_per_leaf, prototype_scale, reduction, trust_confirmed, init_scale) and write a "
        "tab-separated per-iteration loss trace followed by a summary block.",
    )
    p.add_argument("--config", required=True, help="key=value config file")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser(
        "sweep",
        help="rerun the simulator across confidence thresholds",
        description="One seeded lhst run per threshold with everything else fixed; "
        "writes 't<TAB>accuracy' rows.",
    )
    p.add_argument("--config", required=True)
    p.add_argument("--t-values", default="0.65,0.70,0.75,0.80,0.85",
                   help="comma-separated thresholds")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_sweep)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse handles --help (0) and usage errors (2)
        return int(exc.code or 0)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.func(args)
    except HierLabelError as err:
        print(f"ERROR:{err.kind}: {err}", file=sys.stderr)
        return 1
    except OSError as err:  # unreadable/missing files are parse failures
        print(f"ERROR:ParseError: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
