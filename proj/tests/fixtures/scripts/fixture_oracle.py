# Copyright 2026 The ConceptForge Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Derives expected values for the onto-5 / encyc-8 fixtures.

Written from the written rules only: matching cascade, neighborhood BFS, union
graph, term-bag dictionary, corpus vocabulary and label histogram. Output goes
to tests/fixtures/expected/.
"""
import collections
import json
import math
import os
import re
import sys

from nltk.stem.porter import PorterStemmer

HERE = os.path.dirname(os.path.abspath(__file__))
FIX = os.path.dirname(HERE)
OUT = os.path.join(FIX, "expected")
PORTER = PorterStemmer(mode=PorterStemmer.ORIGINAL_ALGORITHM)
LETTERS = re.compile(r"[^\W\d_]+")


def jsonl(name):
    with open(os.path.join(FIX, name), encoding="utf-8") as f:
        return [json.loads(l) for l in f if l.strip()]


def stopwords():
    with open(os.path.join(FIX, "stopwords_en.txt"), encoding="utf-8") as f:
        return {w.strip() for w in f if w.strip() and not w.startswith("#")}


STOP = stopwords()


def words(text):
    return [w.lower() for w in LETTERS.findall(text)]


def stem(w):
    if len(w) <= 2 or not re.fullmatch("[a-z]+", w):
        return w
    return PORTER.stem(w)


def terms(text):
    return [stem(w) for w in words(text) if w not in STOP]


def norm(label):
    return " ".join(words(label))


def bfs(adj, sources):
    dist = {s: 0 for s in sources}
    queue = collections.deque(sources)
    while queue:
        v = queue.popleft()
        for w in sorted(adj[v]):
            if w not in dist:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def mapping(concepts, entries, min_jaccard):
    by_title = collections.defaultdict(list)
    for e in entries:
        by_title[norm(e["title"])].append(e["entry_id"])
    table = {}
    for c in sorted(concepts, key=lambda c: c["id"]):
        hit = sorted(by_title.get(norm(c["prefLabel"]), []))
        if hit:
            table[c["id"]] = ("exact", hit[:1])
            continue
        alias = None
        for alt in c.get("altLabels", []):
            hit = sorted(by_title.get(norm(alt), []))
            if hit:
                alias = hit[:1]
                break
        if alias:
            table[c["id"]] = ("alias", alias)
            continue
        labels = [set(words(c["prefLabel"]))] + [set(words(a)) for a in c.get("altLabels", [])]
        scored = []
        for e in entries:
            t = set(words(e["title"]))
            best = max(len(l & t) / len(l | t) for l in labels)
            if best >= min_jaccard:
                scored.append((-best, e["entry_id"]))
        scored.sort()
        ids = [e for _, e in scored[:5]]
        kind = "unmapped" if not ids else ("alias" if len(ids) == 1 else "multi")
        table[c["id"]] = (kind, ids)
    return table


def neighborhood(seed_ids, entries, radius, cap):
    known = {e["entry_id"] for e in entries}
    adj = collections.defaultdict(set)
    for e in entries:
        for t in e["outlinks"]:
            if t in known and t != e["entry_id"]:
                adj[e["entry_id"]].add(t)
                adj[t].add(e["entry_id"])
    nodes = {s: 0 for s in seed_ids}
    frontier = sorted(set(seed_ids))
    for hop in range(1, radius + 1):
        nxt = sorted({w for v in frontier for w in adj[v] if w not in nodes})[:cap]
        for w in nxt:
            nodes[w] = hop
        frontier = nxt
    rels = sorted(
        (e["entry_id"], t)
        for e in entries
        if e["entry_id"] in nodes
        for t in e["outlinks"]
        if t in nodes and t != e["entry_id"]
    )
    return nodes, rels


def enrich(onto_file, encyc_file, radius=1, cap=50, min_jaccard=0.4):
    recs = jsonl(onto_file)
    concepts = [r for r in recs if r.get("kind", "concept") == "concept"]
    classes = [r for r in recs if r.get("kind") == "class"]
    entries = jsonl(encyc_file) if encyc_file else []
    table = mapping(concepts, entries, min_jaccard)
    by_id = {e["entry_id"]: e for e in entries}

    onto_adj = collections.defaultdict(set)
    for r in recs:
        onto_adj[r["id"]]
    for c in concepts:
        for o in c.get("broader", []) + c.get("related", []):
            onto_adj[c["id"]].add(o)
            onto_adj[o].add(c["id"])
    for k in classes:
        if k.get("parent"):
            onto_adj[k["id"]].add(k["parent"])
            onto_adj[k["parent"]].add(k["id"])

    union_adj = collections.defaultdict(set, {k: set(v) for k, v in onto_adj.items()})
    hoods = {}
    for cid, (kind, ids) in table.items():
        nodes, rels = neighborhood(ids, entries, radius, cap)
        bag = collections.Counter()
        for n in nodes:
            bag.update(terms(by_id[n]["abstract"]))
        hoods[cid] = {"nodes": nodes, "relations": rels, "terms": dict(bag)}
        for n, h in nodes.items():
            if h == 0:
                union_adj[cid].add("E:" + n)
                union_adj["E:" + n].add(cid)
        for a, b in rels:
            union_adj["E:" + a].add("E:" + b)
            union_adj["E:" + b].add("E:" + a)
    return {
        "concepts": concepts,
        "classes": classes,
        "table": table,
        "hoods": hoods,
        "onto_adj": onto_adj,
        "union_adj": union_adj,
    }


def hop_matrix(adj, ids):
    out = {}
    for a in ids:
        d = bfs(adj, [a])
        out[a] = {b: d.get(b, -1) for b in ids}
    return out


def dictionary(state, min_term_weight):
    pats = collections.defaultdict(dict)
    for c in state["concepts"]:
        for label in [c["prefLabel"]] + c.get("altLabels", []):
            toks = tuple(terms(label))
            if toks:
                pats[toks][c["id"]] = 1.0
    for cid, hood in state["hoods"].items():
        total = sum(hood["terms"].values())
        for t, n in hood["terms"].items():
            if total and n / total >= min_term_weight:
                pats[(t,)].setdefault(cid, 0.5)
    return [
        {"tokens": list(k), "owners": [[c, w] for c, w in sorted(v.items())]}
        for k, v in sorted(pats.items())
    ]


def dump(name, obj):
    with open(os.path.join(OUT, name), "w", encoding="utf-8") as f:
        json.dump(obj, f, indent=1, sort_keys=True)
        f.write("\n")


def main():
    st = enrich("onto5.jsonl", "encyc8.jsonl")
    ids = sorted(c["id"] for c in st["concepts"])
    all_ids = sorted(st["onto_adj"])
    dump("onto5_encyc8.json", {
        "dictionary_0_1": dictionary(st, 0.1),
        "mapping": {k: {"kind": v[0], "entry_ids": v[1]} for k, v in st["table"].items()},
        "support_nodes": {k: sorted(([n, h] for n, h in v["nodes"].items()), key=lambda x: (x[1], x[0]))
                          for k, v in st["hoods"].items()},
        "support_relations": {k: v["relations"] for k, v in st["hoods"].items()},
        "term_bags": {k: v["terms"] for k, v in st["hoods"].items()},
        "ontology_hops": hop_matrix(st["onto_adj"], all_ids),
        "union_hops": hop_matrix(st["union_adj"], ids),
        "dictionary_0_2": dictionary(st, 0.2),
    })

    mm = enrich("onto5.jsonl", "mismatch_encyc.jsonl", radius=0)
    dump("onto5_mismatch.json", {"dictionary_0_2": dictionary(mm, 0.2)})

    docs = jsonl("corpus10.jsonl")
    df = collections.Counter()
    for d in docs:
        df.update(set(terms(d["title"] + "\n" + d["abstract"])))
    with open(os.path.join(OUT, "corpus10.vocab.tsv"), "w", encoding="utf-8") as f:
        f.write(f"#docs\t{len(docs)}\n")
        for i, t in enumerate(sorted(df)):
            f.write(f"{t}\t{i}\t{df[t]}\n")

    hist = {}
    for key in ("gold_classes", "gold_concepts"):
        c = collections.Counter()
        for d in docs:
            c.update(set(d[key]))
        hist[key] = sorted(([k, n] for k, n in c.items()), key=lambda x: (-x[1], x[0]))
    dump("corpus10_histograms.json", hist)


if __name__ == "__main__":
    sys.exit(main())
