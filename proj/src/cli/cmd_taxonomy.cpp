#include <fstream>
#include <memory>

#include "commands.hpp"
#include "texshape/error.hpp"
#include "texshape/taxonomy/mapping.hpp"
#include "texshape/trials/simulate.hpp"

namespace texshape::cli {

namespace fs = std::filesystem;

namespace {

struct MappingOpts {
  std::string hierarchy, anchors, leaves, out, probs, aggregation = "max-leaf";
};

ClassMapping load_mapping(const MappingOpts& o) {
  const auto leaves = load_leaves(o.leaves);
  return build_mapping(load_hierarchy(o.hierarchy), load_anchors(o.anchors), leaves);
}

void run_build(const MappingOpts& o, Context& ctx) {
  const auto mapping = load_mapping(o);
  std::ofstream out(o.out, std::ios::trunc);
  if (!out) throw Error(Errc::io_error, "cannot write " + o.out);
  out << "index\tsynset\tcategory\n";
  for (std::size_t i = 0; i < mapping.size(); ++i) {
    out << i << '\t' << mapping.leaves[i] << '\t'
        << (mapping.entries[i] ? std::string(to_string(*mapping.entries[i])) : std::string("-")) << '\n';
  }
  if (!out) throw Error(Errc::io_error, "write failed: " + o.out);
  const auto counts = mapping.counts();
  int mapped = 0;
  for (int c = 0; c < kCategoryCount; ++c) {
    ctx.out << kCategoryNames[static_cast<std::size_t>(c)] << ' ' << counts[static_cast<std::size_t>(c)] << '\n';
    mapped += counts[static_cast<std::size_t>(c)];
  }
  ctx.out << "mapped " << mapped << " of " << mapping.size() << '\n';
}

void run_decide(const MappingOpts& o, Context& ctx) {
  Aggregation agg;
  if (o.aggregation == "max-leaf") agg = Aggregation::max_leaf;
  else if (o.aggregation == "sum-leaves") agg = Aggregation::sum_leaves;
  else throw Error(Errc::invalid_argument, "unknown aggregation '" + o.aggregation + "'");
  const auto table = trials::decisions_from_probabilities(o.probs, load_mapping(o), agg);
  std::ofstream out(o.out, std::ios::trunc);
  if (!out) throw Error(Errc::io_error, "cannot write " + o.out);
  out << "stimulus_id,category\n";
  for (const auto& [id, c] : table) out << id << ',' << to_string(c) << '\n';
  ctx.out << "decisions " << table.size() << '\n';
}

void add_mapping_inputs(CLI::App* s, MappingOpts& o) {
  s->add_option("--hierarchy", o.hierarchy, "child<TAB>parent hypernym edges")->required();
  s->add_option("--anchors", o.anchors, "16 lines: category synset")->required();
  s->add_option("--leaves", o.leaves, "Classifier synsets in class-index order")->required();
}

}  // namespace

void register_taxonomy(CLI::App& app, Context& ctx) {
  auto* cmd = app.add_subcommand("taxonomy", "Map classifier classes to the 16 categories");
  cmd->require_subcommand(1);
  {
    auto o = std::make_shared<MappingOpts>();
    auto* s = cmd->add_subcommand("build", "Write the class-to-category table");
    add_mapping_inputs(s, *o);
    s->add_option("--out", o->out, "Output TSV")->required();
    s->callback([o, &ctx] { run_build(*o, ctx); });
  }
  {
    auto o = std::make_shared<MappingOpts>();
    auto* s = cmd->add_subcommand("decide", "Reduce classifier probabilities to 16-class decisions");
    add_mapping_inputs(s, *o);
    s->add_option("--probs", o->probs, "CSV rows stimulus_id,p0,...")->required();
    s->add_option("--aggregation", o->aggregation, "max-leaf or sum-leaves")->capture_default_str();
    s->add_option("--out", o->out, "Decision CSV")->required();
    s->callback([o, &ctx] { run_decide(*o, ctx); });
  }
}

}  // namespace texshape::cli
