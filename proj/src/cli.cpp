// Copyright 2026 The ConceptForge Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "conceptforge/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <set>
#include <sstream>

#include "conceptforge/classifier.hpp"
#include "conceptforge/combiner.hpp"
#include "conceptforge/corpus.hpp"
#include "conceptforge/enrichment.hpp"
#include "conceptforge/error.hpp"
#include "conceptforge/evaluation.hpp"
#include "conceptforge/io.hpp"
#include "conceptforge/keyword_set.hpp"
#include "conceptforge/ontology.hpp"
#include "conceptforge/recognizer.hpp"
#include "conceptforge/review.hpp"
#include "conceptforge/textproc.hpp"

namespace conceptforge {

namespace {

// Accepts a JSON object (flat, sectioned by subcommand, or a run manifest)
// or key=value lines. Flat keys apply to the selected subcommand.
class FlexibleConfig : public CLI::ConfigINI {
 public:
  explicit FlexibleConfig(const CLI::App* app) : app_(app) {}

  std::vector<CLI::ConfigItem> from_config(std::istream& in) const override {
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    std::vector<std::string> active;
    for (const auto* sub : app_->get_subcommands()) active = {sub->get_name()};
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos || text[first] != '{') {
      std::istringstream ss(text);
      auto items = CLI::ConfigINI::from_config(ss);
      for (auto& item : items) {
        if (item.parents.empty() && item.name != "++" && item.name != "--") item.parents = active;
      }
      return items;
    }
    Json doc;
    try {
      doc = Json::parse(text);
    } catch (const Json::exception& e) {
      throw CLI::ConversionError(std::string("config: ") + e.what());
    }
    std::vector<CLI::ConfigItem> items;
    if (doc.contains("subcommand") && doc.contains("config") && doc["config"].is_object()) {
      add_items(items, {doc["subcommand"].get<std::string>()}, doc["config"]);
      return items;
    }
    for (const auto& [key, value] : doc.items()) {
      if (value.is_object()) {
        add_items(items, {key}, value);
      } else {
        add_item(items, active, key, value);
      }
    }
    return items;
  }

 private:
  static std::string scalar(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    return v.dump();
  }

  static void add_item(std::vector<CLI::ConfigItem>& items, const std::vector<std::string>& parents,
                       const std::string& key, const Json& value) {
    if (value.is_null()) return;
    CLI::ConfigItem item;
    item.parents = parents;
    item.name = key;
    if (value.is_array()) {
      for (const auto& v : value) item.inputs.push_back(scalar(v));
    } else {
      item.inputs.push_back(scalar(value));
    }
    items.push_back(std::move(item));
  }

  static void add_items(std::vector<CLI::ConfigItem>& items, const std::vector<std::string>& parents,
                        const Json& obj) {
    for (const auto& [key, value] : obj.items()) add_item(items, parents, key, value);
  }

  const CLI::App* app_;
};

struct Options {
  std::string ontology, encyclopedia, enriched, corpus, model, out, manifest;
  std::string features = "tfidf";
  std::string predicted, ml, onto, judgments, tasks;
  std::vector<std::string> experts;
  std::string log = "judgments.jsonl";
  std::string host = "127.0.0.1";
  std::string static_dir, stopwords, mapping_overrides;
  std::string stemmer = "porter-en";
  std::string kind = "classes";
  std::string gold = "concepts";
  int level = 1;
  int depth = 2;
  int radius = 1;
  int port = kDefaultReviewPort;
  int threads = 0;
  int epochs = 20;
  int llda_iterations = 500;
  int infer_iterations = 50;
  int top_n = -1;
  int min_year = 0;
  std::size_t cap = 50;
  std::size_t min_df = 1;
  std::size_t fallback_n = kDefaultFallback;
  double decay = 0.5;
  double tau = 0.5;
  double split = 0.67;
  double min_jaccard = 0.4;
  double lambda = 1e-4;
  double alpha = 0.0;
  double beta = 0.01;
  double threshold = 0.0;
  double min_score = 0.0;
  double min_term_weight = 0.2;
  std::uint64_t seed = 42;
  bool drop_unknown = false;
  bool inclusive_year = false;
  bool neighborhood_terms = false;
};

// Collected while a subcommand runs; rendered into the run manifest.
struct RunRecord {
  std::vector<std::pair<std::string, std::string>> inputs;   // (option, path)
  std::vector<std::pair<std::string, std::string>> outputs;  // (name, content hash)
  std::string stdout_text;
};

class Runner {
 public:
  Runner(Options& o, std::ostream& out, std::ostream& err) : o_(o), out_(out), err_(err) {}

  void ingest();
  void enrich();
  void annotate();
  void train();
  void classify();
  void combine_sets();
  void evaluate();
  void stats();
  void serve();

  const RunRecord& record() const { return rec_; }

 private:
  std::string input(const std::string& option, const std::string& path) {
    const std::string resolved = resolve_data_path(path);
    rec_.inputs.emplace_back(option, resolved);
    return resolved;
  }
  void emit(const std::string& content, const std::string& out_path);
  void emit_primary(const std::string& content) { emit(content, o_.out); }
  void report(const std::string& content);
  void warn(const std::string& msg) { err_ << "warning: " << msg << '\n'; }

  TextConfig text_config();
  std::shared_ptr<const OntologyGraph> load_ontology();
  std::shared_ptr<const EnrichedOntology> load_enriched(std::shared_ptr<const OntologyGraph> base);
  Corpus load_corpus(const OntologyGraph* ontology);

  Options& o_;
  std::ostream& out_;
  std::ostream& err_;
  RunRecord rec_;
};

void Runner::emit(const std::string& content, const std::string& out_path) {
  if (out_path.empty()) {
    out_ << content;
    rec_.stdout_text += content;
    rec_.outputs.emplace_back("stdout", hex_digest(content));
  } else {
    write_file(out_path, content);
    rec_.outputs.emplace_back(out_path, hex_digest(content));
  }
}

void Runner::report(const std::string& content) {
  // Secondary output: stdout when the primary went to a file, else stderr.
  if (o_.out.empty()) {
    err_ << content;
  } else {
    out_ << content;
  }
}

TextConfig Runner::text_config() {
  TextConfig t;
  t.stemmer = parse_stemmer(o_.stemmer);
  t.stopwords = o_.stopwords.empty() ? default_english_stopwords()
                                     : load_stopwords_file(input("stopwords", o_.stopwords));
  return t;
}

std::shared_ptr<const OntologyGraph> Runner::load_ontology() {
  return std::make_shared<const OntologyGraph>(
      OntologyGraph::load_file(input("ontology", o_.ontology)));
}

std::shared_ptr<const EnrichedOntology> Runner::load_enriched(
    std::shared_ptr<const OntologyGraph> base) {
  if (!o_.enriched.empty()) {
    const Json doc = Json::parse(read_file(input("enriched", o_.enriched)));
    return std::make_shared<const EnrichedOntology>(EnrichedOntology::from_json(doc, base));
  }
  if (!o_.encyclopedia.empty()) {
    const Encyclopedia enc = Encyclopedia::load_file(input("encyclopedia", o_.encyclopedia));
    EnrichParams p;
    p.min_jaccard = o_.min_jaccard;
    p.neighborhood = {o_.radius, o_.cap};
    p.text = text_config();
    p.threads = o_.threads;
    if (!o_.mapping_overrides.empty()) {
      auto in = open_input(input("mapping-overrides", o_.mapping_overrides));
      p.overrides = load_mapping_overrides(in);
    }
    return std::make_shared<const EnrichedOntology>(enrich_ontology(base, enc, p));
  }
  return std::make_shared<const EnrichedOntology>(base, std::vector<ConceptMapping>{},
                                                  std::map<ConceptId, EnrichedConcept>{});
}

Corpus Runner::load_corpus(const OntologyGraph* ontology) {
  IngestOptions opts;
  opts.ontology = ontology;
  opts.drop_unknown = o_.drop_unknown;
  auto r = ingest_file(input("corpus", o_.corpus), opts);
  if (r.unknown_labels > 0) {
    warn(std::to_string(r.unknown_labels) + " gold labels unknown to the ontology" +
         (o_.drop_unknown ? " (dropped)" : " (retained)"));
  }
  return std::move(r.corpus);
}

// --- Subcommands ---------------------------------------------------------------

void Runner::ingest() {
  std::shared_ptr<const OntologyGraph> ont;
  if (!o_.ontology.empty()) ont = load_ontology();
  IngestOptions opts;
  opts.ontology = ont.get();
  opts.drop_unknown = o_.drop_unknown;
  auto r = ingest_file(input("corpus", o_.corpus), opts);
  OrderedJson summary;
  summary["documents_read"] = r.corpus.size();
  summary["unknown_labels"] = r.unknown_labels;
  summary["dropped_labels"] = r.dropped_labels;
  Corpus corpus = std::move(r.corpus);
  if (o_.min_year != 0) {
    auto f = filter_by_year(corpus, o_.min_year, o_.inclusive_year);
    summary["missing_year"] = f.missing_year;
    summary["excluded_by_year"] = f.excluded;
    corpus = std::move(f.corpus);
  }
  summary["documents"] = corpus.size();
  if (r.unknown_labels > 0) {
    warn(std::to_string(r.unknown_labels) + " gold labels unknown to the ontology");
  }
  emit_primary(corpus.to_jsonl());
  report(summary.dump(2) + "\n");
}

void Runner::enrich() {
  auto base = load_ontology();
  const Encyclopedia enc = Encyclopedia::load_file(input("encyclopedia", o_.encyclopedia));
  if (enc.dropped_links() > 0) {
    warn(std::to_string(enc.dropped_links()) + " encyclopedia links point to unknown entries");
  }
  EnrichParams p;
  p.min_jaccard = o_.min_jaccard;
  p.neighborhood = {o_.radius, o_.cap};
  p.text = text_config();
  p.threads = o_.threads;
  if (!o_.mapping_overrides.empty()) {
    auto in = open_input(input("mapping-overrides", o_.mapping_overrides));
    p.overrides = load_mapping_overrides(in);
  }
  const EnrichedOntology eo = enrich_ontology(base, enc, p);
  const MappingStats s = eo.mapping_stats();
  OrderedJson stats;
  stats["exact"] = s.exact;
  stats["alias"] = s.alias;
  stats["multi"] = s.multi;
  stats["unmapped"] = s.unmapped;
  stats["support_nodes"] = eo.union_graph().node_count() - base->node_count();
  emit_primary(eo.to_json().dump(2) + "\n");
  report(stats.dump(2) + "\n");
}

void Runner::annotate() {
  auto base = load_ontology();
  auto eo = load_enriched(base);
  const Corpus corpus = load_corpus(base.get());
  MatcherOptions mo;
  mo.text = text_config();
  mo.use_neighborhood_terms = o_.neighborhood_terms;
  mo.min_term_weight = o_.min_term_weight;
  const Matcher m = Matcher::build(*eo, mo);
  SuggestParams sp;
  sp.depth = o_.depth;
  sp.decay = o_.decay;
  if (o_.top_n >= 0) sp.top_n = static_cast<std::size_t>(o_.top_n);
  if (o_.min_score > 0.0) sp.min_score = o_.min_score;
  const auto sets = suggest_keywords_batch(corpus.docs(), m, *eo, sp, o_.threads);
  emit_primary(keyword_sets_to_jsonl(sets));
}

void Runner::train() {
  if (o_.out.empty()) throw CLI::RequiredError("--out");
  auto base = load_ontology();
  const Corpus corpus = load_corpus(base.get());
  TrainConfig cfg;
  cfg.lambda = o_.lambda;
  cfg.epochs = o_.epochs;
  cfg.seed = o_.seed;
  cfg.split_ratio = o_.split;
  cfg.level = o_.level;
  cfg.threshold = o_.threshold;
  FeatureParams fp;
  fp.kind = parse_feature_kind(o_.features);
  fp.text = text_config();
  fp.min_df = o_.min_df;
  fp.llda.alpha = o_.alpha;
  fp.llda.beta = o_.beta;
  fp.llda.iterations = o_.llda_iterations;
  fp.llda.seed = o_.seed;
  fp.infer_iterations = o_.infer_iterations;

  const ExperimentResult r = run_experiment(corpus, *base, cfg, fp, o_.threads);
  for (const auto& w : r.warnings) warn(w);

  const std::string name = std::filesystem::path(o_.out).filename().string();
  OrderedJson bundle;
  bundle["format"] = "conceptforge-classifier";
  bundle["version"] = 1;
  bundle["features"] = feature_kind_name(r.features);
  bundle["level"] = r.level;
  bundle["text"] = {{"stemmer", stemmer_name(r.extractor.text.stemmer)},
                    {"lowercase", r.extractor.text.lowercase},
                    {"stopwords", r.extractor.text.stopwords}};
  bundle["infer_iterations"] = r.extractor.infer_iterations;
  bundle["vocabulary"] = name + ".vocab.tsv";
  bundle["llda"] = r.extractor.llda ? OrderedJson(name + ".llda.json") : OrderedJson(nullptr);
  bundle["linear"] = linear_model_to_json(r.model);

  const std::string vocab = r.extractor.vocab.to_tsv();
  emit(vocab, o_.out + ".vocab.tsv");
  if (r.extractor.llda) emit(r.extractor.llda->to_json().dump() + "\n", o_.out + ".llda.json");
  emit_primary(bundle.dump(2) + "\n");
  report(experiment_to_json(r).dump(2) + "\n");
}

void Runner::classify() {
  const std::string model_path = input("model", o_.model);
  const Json bundle = Json::parse(read_file(model_path));
  if (bundle.value("format", "") != "conceptforge-classifier" || bundle.value("version", 0) != 1) {
    throw Error(ErrorCode::kMalformedRecord, model_path, "not a classifier bundle");
  }
  const auto dir = std::filesystem::path(model_path).parent_path();
  FeatureExtractor fx;
  fx.kind = parse_feature_kind(bundle.at("features").get<std::string>());
  fx.text.stemmer = parse_stemmer(bundle.at("text").at("stemmer").get<std::string>());
  fx.text.lowercase = bundle.at("text").at("lowercase").get<bool>();
  for (const auto& w : bundle.at("text").at("stopwords")) fx.text.stopwords.insert(w.get<std::string>());
  fx.infer_iterations = bundle.at("infer_iterations").get<int>();
  {
    auto in = open_input(input("vocabulary", (dir / bundle.at("vocabulary").get<std::string>()).string()));
    fx.vocab = Vocabulary::from_tsv(in);
  }
  if (!bundle.at("llda").is_null()) {
    fx.llda = LldaModel::from_json(
        Json::parse(read_file(input("llda", (dir / bundle.at("llda").get<std::string>()).string()))));
  }
  const LinearModel model = linear_model_from_json(bundle.at("linear"));
  if (model.dim != fx.dim()) {
    throw Error(ErrorCode::kDimensionMismatch, model_path, "feature extractor and model disagree");
  }
  const Corpus corpus = load_corpus(nullptr);
  const auto x = fx.transform_batch(corpus.docs(), o_.threads);
  std::optional<double> th;
  if (o_.threshold != 0.0) th = o_.threshold;
  std::vector<KeywordSet> sets;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    KeywordSet ks{corpus[i].doc_id, {}};
    for (const auto& s : predict(model, x[i], th)) {
      ks.keywords.push_back({s.label, s.margin, Provenance::kClassifier, 0});
    }
    canonicalize(ks);
    if (o_.top_n >= 0 && ks.keywords.size() > static_cast<std::size_t>(o_.top_n)) {
      ks.keywords.resize(static_cast<std::size_t>(o_.top_n));
    }
    sets.push_back(std::move(ks));
  }
  emit_primary(keyword_sets_to_jsonl(sets));
}

void Runner::combine_sets() {
  auto base = load_ontology();
  auto eo = load_enriched(base);
  const auto ml = load_keyword_sets_file(input("ml", o_.ml));
  const auto onto = load_keyword_sets_file(input("onto", o_.onto));
  std::map<std::string, const KeywordSet*> onto_by_doc;
  for (const auto& ks : onto) onto_by_doc[ks.doc_id] = &ks;
  std::vector<std::string> order;
  std::set<std::string> seen;
  for (const auto& ks : ml) {
    if (seen.insert(ks.doc_id).second) order.push_back(ks.doc_id);
  }
  for (const auto& ks : onto) {
    if (seen.insert(ks.doc_id).second) order.push_back(ks.doc_id);
  }
  std::map<std::string, const KeywordSet*> ml_by_doc;
  for (const auto& ks : ml) ml_by_doc[ks.doc_id] = &ks;
  std::vector<KeywordSet> out;
  for (const auto& doc : order) {
    const KeywordSet empty{doc, {}};
    const KeywordSet& a = ml_by_doc.count(doc) ? *ml_by_doc[doc] : empty;
    const KeywordSet& b = onto_by_doc.count(doc) ? *onto_by_doc[doc] : empty;
    out.push_back(combine(a, b, *eo, o_.tau, o_.fallback_n));
  }
  emit_primary(keyword_sets_to_jsonl(out));
}

void Runner::evaluate() {
  auto base = load_ontology();
  std::shared_ptr<const EnrichedOntology> eo;
  if (!o_.enriched.empty() || !o_.encyclopedia.empty()) eo = load_enriched(base);
  const SetDistanceFn distance = eo ? enriched_set_distance(*eo) : ontology_set_distance(*base);
  const auto predicted = load_keyword_sets_file(input("predicted", o_.predicted));

  OrderedJson rep;
  rep["distance_graph"] = eo ? "enriched" : "ontology";
  if (!o_.judgments.empty()) {
    const auto judgments = load_judgments_file(input("judgments", o_.judgments));
    std::vector<JudgmentReport> reports;
    for (const auto& ks : predicted) {
      for (auto& r : judgment_metrics(ks, judgments, distance)) reports.push_back(std::move(r));
    }
    if (reports.empty()) throw Error(ErrorCode::kEmptySet, "judgments", "no judged documents");
    const auto sj = judgment_summary_to_json(summarize_judgments(reports));
    rep["mode"] = "judgments";
    rep["reports"] = reports.size();
    rep["annotators"] = sj.at("annotators");
    rep["pooled"] = sj.at("pooled");
    emit_primary(rep.dump(2) + "\n");
    return;
  }

  if (!o_.experts.empty()) {
    if (o_.experts.size() < 2) {
      throw Error(ErrorCode::kInvalidArgument, "experts", "at least two expert files required");
    }
    std::vector<std::map<std::string, std::vector<ConceptId>>> expert_maps;
    for (const auto& path : o_.experts) {
      std::map<std::string, std::vector<ConceptId>> m;
      for (const auto& ks : load_keyword_sets_file(input("experts", path))) m[ks.doc_id] = ks.ids();
      expert_maps.push_back(std::move(m));
    }
    rep["mode"] = "inter-expert";
    rep["documents"] = OrderedJson::array();
    double sum_expert = 0.0, sum_model = 0.0;
    std::size_t n = 0;
    for (const auto& ks : predicted) {
      std::vector<std::vector<ConceptId>> sets;
      for (const auto& m : expert_maps) {
        auto it = m.find(ks.doc_id);
        if (it != m.end() && !it->second.empty()) sets.push_back(it->second);
      }
      if (sets.size() < 2 || ks.keywords.empty()) continue;
      const auto r = inter_expert_report(sets, ks.ids(), distance);
      rep["documents"].push_back({{"doc_id", ks.doc_id},
                                  {"experts", r.experts},
                                  {"expert_mean", r.expert_mean},
                                  {"model_mean", r.model_mean},
                                  {"difference", r.difference}});
      sum_expert += r.expert_mean;
      sum_model += r.model_mean;
      ++n;
    }
    rep["evaluated"] = n;
    if (n > 0) {
      rep["expert_mean"] = sum_expert / static_cast<double>(n);
      rep["model_mean"] = sum_model / static_cast<double>(n);
      rep["difference"] = (sum_model - sum_expert) / static_cast<double>(n);
    }
    emit_primary(rep.dump(2) + "\n");
    return;
  }

  const Corpus corpus = load_corpus(base.get());
  const LabelKind kind = parse_label_kind(o_.gold);
  std::map<std::string, const KeywordSet*> by_doc;
  for (const auto& ks : predicted) by_doc[ks.doc_id] = &ks;
  std::vector<Counts> counts;
  OrderedJson per_doc = OrderedJson::array();
  double dist_sum = 0.0;
  std::size_t dist_n = 0, skipped_empty = 0, skipped_unknown = 0;
  for (const auto& doc : corpus.docs()) {
    std::vector<ConceptId> gold = kind == LabelKind::kClasses
                                      ? (o_.level > 0 ? project_labels(doc, *base, o_.level)
                                                      : doc.gold_classes)
                                      : doc.gold_concepts;
    std::vector<ConceptId> pred;
    if (auto it = by_doc.find(doc.doc_id); it != by_doc.end()) pred = it->second->ids();
    const Counts c = confusion(pred, gold);
    counts.push_back(c);
    OrderedJson d;
    d["doc_id"] = doc.doc_id;
    d["counts"] = {{"tp", c.tp}, {"fp", c.fp}, {"fn", c.fn}};
    d["prf"] = prf_to_json(prf(c));
    const auto known = [&](const std::vector<ConceptId>& ids) {
      return std::all_of(ids.begin(), ids.end(), [&](const ConceptId& id) { return base->contains(id); });
    };
    if (pred.empty() || gold.empty()) {
      ++skipped_empty;
      d["distance"] = nullptr;
    } else if (!known(pred) || !known(gold)) {
      ++skipped_unknown;
      d["distance"] = nullptr;
    } else {
      const double v = distance(pred, gold);
      d["distance"] = v;
      dist_sum += v;
      ++dist_n;
    }
    per_doc.push_back(std::move(d));
  }
  if (counts.empty()) throw Error(ErrorCode::kEmptyCorpus, o_.corpus);
  rep["mode"] = "gold";
  rep["gold"] = o_.gold;
  rep["documents"] = counts.size();
  rep["micro"] = prf_to_json(aggregate(counts, Averaging::kMicro));
  rep["macro"] = prf_to_json(aggregate(counts, Averaging::kMacro));
  rep["distance"] = {{"mean", dist_n ? OrderedJson(dist_sum / static_cast<double>(dist_n))
                                     : OrderedJson(nullptr)},
                     {"documents", dist_n},
                     {"skipped_empty", skipped_empty},
                     {"skipped_unknown", skipped_unknown}};
  rep["per_doc"] = std::move(per_doc);
  emit_primary(rep.dump(2) + "\n");
}

void Runner::stats() {
  const Corpus corpus = load_corpus(nullptr);
  emit_primary(histogram_to_json(class_distribution(corpus, parse_label_kind(o_.kind))).dump(2) +
               "\n");
}

void Runner::serve() {
  auto base = load_ontology();
  std::shared_ptr<const EnrichedOntology> eo;
  if (!o_.enriched.empty() || !o_.encyclopedia.empty()) eo = load_enriched(base);
  Corpus corpus = load_corpus(base.get());
  auto tasks = load_keyword_sets_file(input("tasks", o_.tasks));
  ReviewStore store(base, eo, std::move(corpus), std::move(tasks), ReviewConfig{o_.log, {}});
  err_ << "serving " << store.task_count() << " review tasks on http://" << o_.host << ':'
       << o_.port << '\n';
  err_.flush();
  if (!run_review_server(store, o_.host, o_.port, o_.static_dir)) {
    throw Error(ErrorCode::kIo, o_.host + ":" + std::to_string(o_.port), "cannot listen");
  }
}

// --- Manifest -------------------------------------------------------------------

OrderedJson effective_config(const CLI::App* sub) {
  OrderedJson cfg = OrderedJson::object();
  for (const CLI::Option* opt : sub->get_options()) {
    const std::string name = opt->get_single_name();
    if (name.empty() || name == "help" || name == "config" || name == "manifest") continue;
    std::vector<std::string> values = opt->count() > 0 ? opt->results() : std::vector<std::string>{};
    if (values.empty()) {
      const std::string def = opt->get_default_str();
      if (def.empty()) continue;
      values.push_back(def);
    }
    if (opt->get_expected_max() > 1) {
      cfg[name] = values;
    } else {
      cfg[name] = values.back();
    }
  }
  return cfg;
}

OrderedJson manifest_json(const CLI::App* sub, const RunRecord& rec) {
  OrderedJson m;
  m["tool"] = "conceptforge";
  m["version"] = kVersion;
  m["subcommand"] = sub->get_name();
  m["config"] = effective_config(sub);
  if (const CLI::Option* s = sub->get_option_no_throw("--seed")) {
    m["seeds"] = {{"seed", s->count() > 0 ? s->results().back() : s->get_default_str()}};
  }
  m["inputs"] = OrderedJson::array();
  for (const auto& [option, path] : rec.inputs) {
    std::string digest;
    try {
      digest = hex_digest(read_file(path));
    } catch (const Error&) {
      digest = "unreadable";
    }
    m["inputs"].push_back({{"option", option}, {"path", path}, {"fnv1a64", digest}});
  }
  m["outputs"] = OrderedJson::array();
  for (const auto& [path, digest] : rec.outputs) {
    m["outputs"].push_back({{"path", path}, {"fnv1a64", digest}});
  }
  return m;
}

int exit_code_for(const Error& e) {
  return e.code() == ErrorCode::kIo ? kExitRuntime : kExitValidation;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Subject indexing toolkit: thesaurus enrichment, keyword suggestion, "
               "classification and evaluation.",
               "conceptforge"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.set_version_flag("--version", kVersion);
  app.set_config("--config", "", "JSON or key=value config file; command-line flags win");
  app.config_formatter(std::make_shared<FlexibleConfig>(&app));

  auto add_manifest = [&](CLI::App* s) {
    s->add_option("--manifest", o.manifest, "Run manifest path (default: <out>.manifest.json)");
  };
  auto add_text = [&](CLI::App* s) {
    s->add_option("--stopwords", o.stopwords, "Stopword list file (default: built-in English)");
    s->add_option("--stemmer", o.stemmer, "porter-en | light-de | none");
  };
  auto add_enrichment = [&](CLI::App* s) {
    s->add_option("--enriched", o.enriched, "Enriched ontology JSON from `enrich`");
    s->add_option("--encyclopedia", o.encyclopedia, "Encyclopedia JSON-lines (enrich on the fly)");
    s->add_option("--k,--radius", o.radius, "Neighborhood radius in link hops");
    s->add_option("--cap", o.cap, "Max new support nodes per hop");
    s->add_option("--min-jaccard", o.min_jaccard, "Fuzzy label match threshold");
    s->add_option("--mapping-overrides", o.mapping_overrides, "TSV of concept_id<TAB>entry_id");
  };

  auto* ingest = app.add_subcommand("ingest", "Validate and normalize a corpus");
  ingest->add_option("--corpus", o.corpus, "Corpus JSON-lines")->required();
  ingest->add_option("--ontology", o.ontology, "Cross-check gold labels");
  ingest->add_flag("--drop-unknown", o.drop_unknown, "Drop gold labels unknown to the ontology");
  ingest->add_option("--min-year", o.min_year, "Keep documents published after this year");
  ingest->add_flag("--inclusive-year", o.inclusive_year, "Also keep documents from --min-year");
  ingest->add_option("--out", o.out, "Output corpus JSON-lines");

  auto* enrich = app.add_subcommand("enrich", "Link concepts to encyclopedia neighborhoods");
  enrich->add_option("--ontology", o.ontology, "Ontology JSON-lines")->required();
  add_enrichment(enrich);
  enrich->get_option("--encyclopedia")->required();
  enrich->remove_option(enrich->get_option("--enriched"));
  enrich->add_option("--threads", o.threads, "OpenMP threads (0 = runtime default)");
  enrich->add_option("--out", o.out, "Enriched ontology JSON");
  add_text(enrich);

  auto* annotate = app.add_subcommand("annotate", "Suggest keywords by concept recognition");
  annotate->add_option("--ontology", o.ontology, "Ontology JSON-lines")->required();
  annotate->add_option("--corpus", o.corpus, "Corpus JSON-lines")->required();
  add_enrichment(annotate);
  annotate->add_option("--depth", o.depth, "Expansion depth in hops");
  annotate->add_option("--decay", o.decay, "Per-hop score decay in (0, 1)");
  annotate->add_option("--top-n", o.top_n, "Keep the N best keywords (negative = all)");
  annotate->add_option("--min-score", o.min_score, "Drop keywords scoring below this");
  annotate->add_flag("--neighborhood-terms", o.neighborhood_terms,
                     "Also match encyclopedia neighborhood terms");
  annotate->add_option("--min-term-weight", o.min_term_weight,
                       "Relative frequency a neighborhood term needs");
  annotate->add_option("--threads", o.threads, "OpenMP threads (0 = runtime default)");
  annotate->add_option("--out", o.out, "Keyword sets JSON-lines");
  add_text(annotate);

  auto* train = app.add_subcommand("train", "Train a one-vs-rest classifier for one level");
  train->add_option("--ontology", o.ontology, "Ontology with the classification system")->required();
  train->add_option("--corpus", o.corpus, "Corpus with gold classes")->required();
  train->add_option("--features", o.features, "tfidf | llda");
  train->add_option("--level", o.level, "Target hierarchy level");
  train->add_option("--seed", o.seed, "Seed for split, sampler and SGD");
  train->add_option("--split", o.split, "Training fraction");
  train->add_option("--lambda", o.lambda, "L2 regularization");
  train->add_option("--epochs", o.epochs, "SGD passes over the training set");
  train->add_option("--threshold", o.threshold, "Decision threshold on margins");
  train->add_option("--min-df", o.min_df, "Minimum document frequency");
  train->add_option("--alpha", o.alpha, "LLDA alpha (0 = 50 / topics)");
  train->add_option("--beta", o.beta, "LLDA beta");
  train->add_option("--llda-iterations", o.llda_iterations, "LLDA Gibbs sweeps");
  train->add_option("--infer-iterations", o.infer_iterations, "LLDA inference sweeps");
  train->add_option("--threads", o.threads, "OpenMP threads (0 = runtime default)");
  train->add_option("--out", o.out, "Model bundle JSON (sidecar files share the prefix)");
  add_text(train);

  auto* classify = app.add_subcommand("classify", "Predict classes with a trained bundle");
  classify->add_option("--model", o.model, "Model bundle from `train`")->required();
  classify->add_option("--corpus", o.corpus, "Corpus JSON-lines")->required();
  classify->add_option("--threshold", o.threshold, "Override the bundle's decision threshold");
  classify->add_option("--top-n", o.top_n, "Keep the N best labels (negative = all)");
  classify->add_option("--threads", o.threads, "OpenMP threads (0 = runtime default)");
  classify->add_option("--out", o.out, "Keyword sets JSON-lines");

  auto* combine = app.add_subcommand("combine", "Merge ML and ontology keyword sets");
  combine->add_option("--ontology", o.ontology, "Ontology JSON-lines")->required();
  combine->add_option("--ml", o.ml, "Classifier keyword sets")->required();
  combine->add_option("--onto", o.onto, "Recognizer keyword sets")->required();
  add_enrichment(combine);
  combine->add_option("--tau", o.tau, "Distance threshold in [0, 1]");
  combine->add_option("--fallback-n", o.fallback_n, "Per-source keywords kept when disjoint");
  combine->add_option("--out", o.out, "Keyword sets JSON-lines");
  add_text(combine);

  auto* evaluate = app.add_subcommand("evaluate", "Score keyword sets");
  evaluate->add_option("--ontology", o.ontology, "Ontology JSON-lines")->required();
  evaluate->add_option("--predicted", o.predicted, "Keyword sets to score")->required();
  evaluate->add_option("--corpus", o.corpus, "Corpus with gold labels");
  evaluate->add_option("--gold", o.gold, "concepts | classes");
  evaluate->add_option("--level", o.level, "Project gold classes to this level (0 = as is)");
  evaluate->add_option("--judgments", o.judgments, "Expert judgments JSON-lines");
  evaluate->add_option("--experts", o.experts, "Two or more expert keyword set files");
  add_enrichment(evaluate);
  evaluate->add_option("--out", o.out, "Report JSON");
  add_text(evaluate);

  auto* stats = app.add_subcommand("stats", "Label frequency histogram");
  stats->add_option("--corpus", o.corpus, "Corpus JSON-lines")->required();
  stats->add_option("--kind", o.kind, "classes | concepts");
  stats->add_option("--out", o.out, "Histogram JSON");

  auto* serve = app.add_subcommand("serve", "Run the keyword review service");
  serve->add_option("--ontology", o.ontology, "Ontology JSON-lines")->required();
  serve->add_option("--corpus", o.corpus, "Corpus JSON-lines")->required();
  serve->add_option("--tasks", o.tasks, "Keyword sets to review")->required();
  add_enrichment(serve);
  serve->add_option("--log", o.log, "Append-only judgment log");
  serve->add_option("--host", o.host, "Bind address");
  serve->add_option("--port", o.port, "TCP port");
  serve->add_option("--static", o.static_dir, "Directory with the review UI bundle");
  add_text(serve);

  for (auto* s : {ingest, enrich, annotate, train, classify, combine, evaluate, stats, serve}) {
    add_manifest(s);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  if (sub == evaluate && o.judgments.empty() && o.experts.empty() && o.corpus.empty()) {
    err << "evaluate: one of --corpus, --judgments or --experts is required\n"
        << evaluate->help();
    return kExitUsage;
  }
  Runner runner(o, out, err);
  const std::map<CLI::App*, std::function<void()>> actions = {
      {ingest, [&] { runner.ingest(); }},     {enrich, [&] { runner.enrich(); }},
      {annotate, [&] { runner.annotate(); }}, {train, [&] { runner.train(); }},
      {classify, [&] { runner.classify(); }}, {combine, [&] { runner.combine_sets(); }},
      {evaluate, [&] { runner.evaluate(); }}, {stats, [&] { runner.stats(); }},
      {serve, [&] { runner.serve(); }},
  };
  try {
    actions.at(sub)();
    const std::string manifest = manifest_json(sub, runner.record()).dump(2) + "\n";
    if (!o.manifest.empty()) {
      write_file(o.manifest, manifest);
    } else if (!o.out.empty()) {
      write_file(o.out + ".manifest.json", manifest);
    } else {
      err << manifest;
    }
  } catch (const CLI::ParseError& e) {
    err << sub->get_name() << ": " << e.what() << '\n' << sub->help();
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const Json::exception& e) {
    err << "error: MalformedRecord: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace conceptforge
