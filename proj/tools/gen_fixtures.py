#!/usr/bin/env python3
"""Regenerates the frozen fixtures under data/ (taxonomy and bias records).

Deterministic: the outputs only depend on this file.
"""
import csv
import os
import random
import sys

CATEGORIES = ["airplane", "bear", "bicycle", "bird", "boat", "bottle", "car", "cat",
              "chair", "clock", "dog", "elephant", "keyboard", "knife", "oven", "truck"]

ANCHORS = {
    "airplane": "n02691156", "bear": "n02131653", "bicycle": "n02834778", "bird": "n01503061",
    "boat": "n02858304", "bottle": "n02876657", "car": "n02958343", "cat": "n02121808",
    "chair": "n03001627", "clock": "n03046257", "dog": "n02084071", "elephant": "n02503517",
    "keyboard": "n03614007", "knife": "n03623556", "oven": "n03862676", "truck": "n04490091",
}

# Real WordNet edges for a few well-known chains.
REAL_EDGES = [
    ("n02123045", "n02121808"),  # tabby -> domestic cat
    ("n02123159", "n02121808"),  # tiger cat -> domestic cat
    ("n02123394", "n02121808"),  # Persian cat -> domestic cat
    ("n02123597", "n02121808"),  # Siamese cat -> domestic cat
    ("n02124075", "n02121808"),  # Egyptian cat -> domestic cat
    ("n02121808", "n02121620"),  # domestic cat -> cat
    ("n02121620", "n02120997"),  # cat -> feline
    ("n02129604", "n02127808"),  # tiger -> big cat
    ("n02128385", "n02127808"),  # leopard -> big cat
    ("n02127808", "n02120997"),  # big cat -> feline
    ("n02120997", "n02075296"),  # feline -> carnivore
    ("n02084071", "n02083346"),  # dog -> canine
    ("n02083346", "n02075296"),  # canine -> carnivore
    ("n02131653", "n02075296"),  # bear -> carnivore
    ("n02075296", "n01886756"),  # carnivore -> placental
    ("n02503517", "n01886756"),  # elephant (via proboscidean, shortened)
    ("n01886756", "n01861778"),  # placental -> mammal
    ("n01861778", "n01471682"),  # mammal -> vertebrate
    ("n01503061", "n01471682"),  # bird -> vertebrate
    ("n01471682", "n00015388"),  # vertebrate -> animal (shortened)
    ("n02690373", "n02691156"),  # airliner -> airplane
    ("n03345487", "n04490091"),  # fire engine -> truck
    ("n03930630", "n04490091"),  # pickup -> truck
]
REAL_LEAVES = {
    "n02123045": "cat", "n02123159": "cat", "n02123394": "cat", "n02123597": "cat",
    "n02124075": "cat", "n02129604": None, "n02128385": None, "n02690373": "airplane",
    "n03345487": "truck", "n03930630": "truck",
}

# Synthetic leaves per category; the remaining leaves map nowhere.
SYNTHETIC_PER_CATEGORY = {
    "airplane": 6, "bear": 4, "bicycle": 2, "bird": 52, "boat": 6, "bottle": 7, "car": 10,
    "cat": 2, "chair": 4, "clock": 3, "dog": 118, "elephant": 3, "keyboard": 2, "knife": 1,
    "oven": 1, "truck": 6,
}


def taxonomy(out_dir):
    os.makedirs(out_dir, exist_ok=True)
    edges = list(REAL_EDGES)
    leaves = dict(REAL_LEAVES)
    counter = 0

    def fresh():
        nonlocal counter
        counter += 1
        return "s%07d" % counter

    for cat in CATEGORIES:
        anchor = ANCHORS[cat]
        mid = fresh()
        edges.append((mid, anchor))
        if not any(child == anchor for child, _ in edges):
            edges.append((anchor, "s9999999"))
        for i in range(SYNTHETIC_PER_CATEGORY[cat]):
            leaf = fresh()
            edges.append((leaf, mid if i % 2 == 0 else anchor))
            leaves[leaf] = cat
    # One leaf with two parents under the same anchor stays unambiguous.
    dag_leaf = fresh()
    edges.append((dag_leaf, "n02084071"))
    edges.append((dag_leaf, "n02083346"))
    leaves[dag_leaf] = "dog"
    other = fresh()
    edges.append((other, "s9999999"))
    while len(leaves) < 1000:
        leaf = fresh()
        edges.append((leaf, other))
        leaves[leaf] = None

    ordered = sorted(leaves)
    with open(os.path.join(out_dir, "leaves.txt"), "w") as f:
        f.write("".join(l + "\n" for l in ordered))
    with open(os.path.join(out_dir, "hierarchy.tsv"), "w") as f:
        f.write("# child\tparent\n")
        for child, parent in edges:
            f.write("%s\t%s\n" % (child, parent))
    with open(os.path.join(out_dir, "anchors.tsv"), "w") as f:
        for cat in CATEGORIES:
            f.write("%s\t%s\n" % (cat, ANCHORS[cat]))
    counts = {c: 0 for c in CATEGORIES}
    for leaf in ordered:
        if leaves[leaf]:
            counts[leaves[leaf]] += 1
    with open(os.path.join(out_dir, "category_counts.tsv"), "w") as f:
        for cat in CATEGORIES:
            f.write("%s\t%d\n" % (cat, counts[cat]))


def conflict_design():
    rows = []
    for s in range(16):
        for t in range(16):
            for r in range(5):
                rows.append(("cc%02d%02d%d" % (s, t, r), CATEGORIES[s], CATEGORIES[t]))
    return rows


def other_category(rng, shape, texture):
    choices = [c for c in CATEGORIES if c not in (shape, texture)]
    return rng.choice(choices)


def observer_rows(rng, subject, kind, n_shape, n_texture, n_neither, n_silent):
    design = conflict_design()
    conflict = [d for d in design if d[1] != d[2]]
    same = [d for d in design if d[1] == d[2]]
    labels = ["shape"] * n_shape + ["texture"] * n_texture + ["neither"] * (n_neither - n_silent) + ["none"] * n_silent
    assert len(labels) == len(conflict)
    rng.shuffle(labels)
    out = []
    for (sid, shape, texture), label in zip(conflict, labels):
        response = {"shape": shape, "texture": texture, "none": "NA"}.get(label) or other_category(rng, shape, texture)
        out.append((subject, kind, sid, shape, texture, response))
    for sid, shape, texture in same:
        out.append((subject, kind, sid, shape, texture, shape))
    return out


def bias_records(out_dir):
    os.makedirs(out_dir, exist_ok=True)
    rng = random.Random(20190101)
    header = ["subject_id", "subject_kind", "condition", "stimulus_id", "shape_category",
              "texture_category", "level", "response", "rt_ms"]
    humans = []
    # 2877 shape / 123 texture / 600 neither over three observers.
    for subject, counts in (("subj01", (958, 41, 201, 12)), ("subj02", (962, 39, 199, 9)),
                            ("subj03", (957, 43, 200, 15))):
        humans += observer_rows(rng, subject, "human", *counts)
    with open(os.path.join(out_dir, "human.csv"), "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(header)
        for subject, kind, sid, shape, texture, response in humans:
            rt = "NA" if response == "NA" else "%d" % rng.randint(350, 1450)
            w.writerow([subject, kind, "cue-conflict-style-transfer", sid, shape, texture, "NA", response, rt])
    model = observer_rows(rng, "resnet50", "machine", 221, 779, 200, 0)
    with open(os.path.join(out_dir, "resnet50.csv"), "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(header)
        for subject, kind, sid, shape, texture, response in model:
            w.writerow([subject, kind, "cue-conflict-style-transfer", sid, shape, texture, "NA", response, "NA"])


def corpus(out_dir):
    """Natural test images (scikit-image samples), centre-cropped to 224x224."""
    import numpy as np
    from PIL import Image
    import skimage.data as samples
    os.makedirs(out_dir, exist_ok=True)
    for name in ("astronaut", "chelsea", "coffee", "rocket", "camera", "brick", "grass", "gravel", "horse"):
        arr = np.asarray(getattr(samples, name)())
        if arr.dtype == bool:
            arr = np.where(arr, 255, 0).astype(np.uint8)
        img = Image.fromarray(arr)
        if img.mode not in ("L", "RGB"):
            img = img.convert("RGB")
        side = min(img.size)
        left, top = (img.size[0] - side) // 2, (img.size[1] - side) // 2
        img = img.crop((left, top, left + side, top + side)).resize((224, 224), Image.LANCZOS)
        img.save(os.path.join(out_dir, name + ".png"), optimize=True)


if __name__ == "__main__":
    root = sys.argv[1] if len(sys.argv) > 1 else os.path.join(os.path.dirname(__file__), "..", "data")
    taxonomy(os.path.join(root, "taxonomy"))
    bias_records(os.path.join(root, "bias_records"))
    corpus(os.path.join(root, "corpus"))
