#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mlst/mlst.hpp"

namespace {

std::vector<uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<uint8_t> data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw std::runtime_error("read failed: " + path);
  return data;
}

void write_file(const std::string& path, const std::vector<uint8_t>& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot create " + path);
  out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

double ns_per_byte(std::chrono::nanoseconds dt, size_t bytes) {
  return bytes == 0 ? 0.0 : static_cast<double>(dt.count()) / static_cast<double>(bytes);
}

int cmd_compress(const std::string& in, const std::string& out, mlst::CostModel model,
                 unsigned window_log) {
  auto text = read_file(in);
  auto packed = mlst::compress(text, model, window_log);
  write_file(out, packed);
  double ratio = text.empty() ? 0.0 : 100.0 * static_cast<double>(packed.size()) / static_cast<double>(text.size());
  std::fprintf(stderr, "%s: %zu -> %zu bytes (%.1f%%)\n", in.c_str(), text.size(), packed.size(), ratio);
  return 0;
}

int cmd_decompress(const std::string& in, const std::string& out) {
  auto packed = read_file(in);
  auto text = mlst::decompress(packed);
  write_file(out, text);
  std::fprintf(stderr, "%s: %zu -> %zu bytes\n", in.c_str(), packed.size(), text.size());
  return 0;
}

int cmd_stats(const std::string& in, mlst::CostModel model, unsigned window_log) {
  auto text = read_file(in);
  const uint64_t window = uint64_t(1) << window_log;
  auto rep = mlst::offset_bill(text, mlst::OffsetStrategy::rep, model, window);
  auto rm = mlst::offset_bill(text, mlst::OffsetStrategy::rightmost_oracle, model, window);
  auto lm = mlst::offset_bill(text, mlst::OffsetStrategy::leftmost, model, window);
  std::printf("input bytes:      %zu\n", text.size());
  std::printf("tokens:           %llu matches, %llu literals\n",
              static_cast<unsigned long long>(rep.match_count),
              static_cast<unsigned long long>(rep.literal_count));
  std::printf("offset bits (equal-cost index): %llu\n",
              static_cast<unsigned long long>(rep.offset_bits));
  std::printf("offset bits (rightmost oracle): %llu\n",
              static_cast<unsigned long long>(rm.offset_bits));
  std::printf("offset bits (leftmost):         %llu\n",
              static_cast<unsigned long long>(lm.offset_bits));
  return 0;
}

int cmd_bench(const std::vector<std::string>& inputs, mlst::CostModel model, unsigned window_log) {
  using clock = std::chrono::steady_clock;
  const uint64_t window = uint64_t(1) << window_log;
  std::printf("%-24s %12s %14s %14s %8s\n", "input", "bytes", "index ns/byte", "basel ns/byte", "delta");
  for (const auto& path : inputs) {
    auto text = read_file(path);

    auto t0 = clock::now();
    mlst::MultilayerIndex ix(model, window);
    for (uint8_t ch : text) ix.advance(ch);
    auto t1 = clock::now();
    mlst::RmstBaseline base(window);
    for (uint8_t ch : text) base.step(ch);
    auto t2 = clock::now();

    double mlst_ns = ns_per_byte(t1 - t0, text.size());
    double rmst_ns = ns_per_byte(t2 - t1, text.size());
    double delta = rmst_ns > 0 ? mlst_ns / rmst_ns : 0.0;
    std::printf("%-24s %12zu %14.2f %14.2f %8.2f\n", path.c_str(), text.size(), mlst_ns, rmst_ns, delta);
    double n = text.empty() ? 1.0 : static_cast<double>(text.size());
    std::printf("input=%s bytes=%zu mlst_ns_per_byte=%.2f rmst_ns_per_byte=%.2f "
                "mlst_ops_per_byte=%.2f rmst_updates_per_byte=%.2f delta=%.2f\n",
                path.c_str(), text.size(), mlst_ns, rmst_ns,
                static_cast<double>(ix.op_count()) / n,
                static_cast<double>(base.update_count()) / n, delta);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multilayer sliding-window match index and compressor"};
  app.require_subcommand(1);

  std::map<std::string, mlst::CostModel> model_names{
      {"gamma", mlst::CostModel::gamma},
      {"binary", mlst::CostModel::binary},
  };

  std::string in_path, out_path;
  std::vector<std::string> bench_inputs;
  mlst::CostModel model = mlst::CostModel::gamma;
  unsigned window_log = 20;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--window-log", window_log, "window size as a power of two")
        ->default_val(20)
        ->check(CLI::Range(0u, mlst::max_window_log));
    cmd->add_option("--model", model, "offset cost model")
        ->default_str("gamma")
        ->transform(CLI::CheckedTransformer(model_names, CLI::ignore_case));
  };

  auto* comp = app.add_subcommand("compress", "compress a file");
  comp->add_option("input", in_path, "input file")->required();
  comp->add_option("output", out_path, "output file")->required();
  add_common(comp);

  auto* dec = app.add_subcommand("decompress", "restore a compressed file");
  dec->add_option("input", in_path, "compressed file")->required();
  dec->add_option("output", out_path, "output file")->required();

  auto* stats = app.add_subcommand("stats", "offset cost of three pricing strategies");
  stats->add_option("input", in_path, "input file")->required();
  add_common(stats);

  auto* bench = app.add_subcommand("bench", "index vs baseline build speed");
  bench->add_option("inputs", bench_inputs, "input files")->required();
  add_common(bench);

  CLI11_PARSE(app, argc, argv);

  try {
    if (comp->parsed()) return cmd_compress(in_path, out_path, model, window_log);
    if (dec->parsed()) return cmd_decompress(in_path, out_path);
    if (stats->parsed()) return cmd_stats(in_path, model, window_log);
    if (bench->parsed()) return cmd_bench(bench_inputs, model, window_log);
  } catch (const mlst::CorruptStream& e) {
    std::fprintf(stderr, "error: corrupt stream: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
