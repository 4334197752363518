#include "anyforest/step_order.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

#include "anyforest/error.hpp"

namespace anyforest {

namespace {

void check_budgets(std::span<const int> budgets) {
  for (int b : budgets) {
    if (b < 0) throw StructuralError("negative step budget");
  }
}

void check_sequence(const TreeSequence& sequence, std::size_t n_trees) {
  if (sequence.size() != n_trees) {
    throw StructuralError("tree sequence has " + std::to_string(sequence.size()) +
                          " entries for " + std::to_string(n_trees) + " trees");
  }
  std::vector<bool> seen(n_trees, false);
  for (std::size_t i : sequence) {
    if (i >= n_trees || seen[i]) throw StructuralError("tree sequence is not a permutation");
    seen[i] = true;
  }
}

std::size_t sum_budgets(std::span<const int> budgets) {
  std::size_t k = 0;
  for (int b : budgets) k += static_cast<std::size_t>(b);
  return k;
}

}  // namespace

void validate(const StepOrder& order) {
  check_budgets(order.budgets);
  std::vector<int> seen(order.budgets.size(), 0);
  for (std::size_t i : order.steps) {
    if (i >= order.budgets.size()) {
      throw StructuralError("step names tree " + std::to_string(i) + ", order covers " +
                            std::to_string(order.budgets.size()) + " trees");
    }
    ++seen[i];
  }
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (seen[i] != order.budgets[i]) {
      throw StructuralError("tree " + std::to_string(i) + " appears " +
                            std::to_string(seen[i]) + " times, budget is " +
                            std::to_string(order.budgets[i]));
    }
  }
}

bool is_valid(const StepOrder& order) noexcept {
  try {
    validate(order);
    return true;
  } catch (const StructuralError&) {
    return false;
  }
}

StepOrder depth_order(const TreeSequence& sequence, std::span<const int> budgets) {
  check_budgets(budgets);
  check_sequence(sequence, budgets.size());
  StepOrder out{{budgets.begin(), budgets.end()}, {}};
  out.steps.reserve(sum_budgets(budgets));
  for (std::size_t tree : sequence) {
    out.steps.insert(out.steps.end(), static_cast<std::size_t>(budgets[tree]), tree);
  }
  return out;
}

StepOrder breadth_order(const TreeSequence& sequence, std::span<const int> budgets) {
  check_budgets(budgets);
  check_sequence(sequence, budgets.size());
  StepOrder out{{budgets.begin(), budgets.end()}, {}};
  out.steps.reserve(sum_budgets(budgets));
  const int layers = budgets.empty() ? 0 : *std::max_element(budgets.begin(), budgets.end());
  for (int layer = 0; layer < layers; ++layer) {
    for (std::size_t tree : sequence) {
      if (layer < budgets[tree]) out.steps.push_back(tree);
    }
  }
  return out;
}

StepOrder random_order(std::span<const int> budgets, std::uint64_t seed) {
  TreeSequence identity(budgets.size());
  for (std::size_t i = 0; i < identity.size(); ++i) identity[i] = i;
  StepOrder out = depth_order(identity, budgets);
  std::mt19937_64 rng(seed);
  std::shuffle(out.steps.begin(), out.steps.end(), rng);
  return out;
}

std::uint64_t count_orders(std::span<const int> budgets) {
  check_budgets(budgets);
  using u128 = unsigned __int128;
  u128 total = 1;
  std::uint64_t placed = 0;
  for (int b : budgets) {
    // Multiply by C(placed + b, b), one factor at a time; every partial
    // product is itself an integer binomial multiple.
    for (int j = 1; j <= b; ++j) {
      total = total * (placed + static_cast<std::uint64_t>(j)) / static_cast<std::uint64_t>(j);
      if (total > UINT64_MAX) return UINT64_MAX;
    }
    placed += static_cast<std::uint64_t>(b);
  }
  return static_cast<std::uint64_t>(total);
}

OrderEnumerator::OrderEnumerator(std::vector<int> budgets, std::uint64_t limit) {
  const auto count = count_orders(budgets);
  if (count > limit) {
    throw ConfigError("refusing to enumerate " + std::to_string(count) +
                      " step orders (limit " + std::to_string(limit) + ")");
  }
  TreeSequence identity(budgets.size());
  for (std::size_t i = 0; i < identity.size(); ++i) identity[i] = i;
  current_ = depth_order(identity, budgets);
}

bool OrderEnumerator::advance() {
  return std::next_permutation(current_.steps.begin(), current_.steps.end());
}

std::vector<StepOrder> enumerate_all_orders(std::span<const int> budgets, std::uint64_t limit) {
  OrderEnumerator orders({budgets.begin(), budgets.end()}, limit);
  std::vector<StepOrder> out;
  do {
    out.push_back(orders.current());
  } while (orders.advance());
  return out;
}

std::string format_step_order(const StepOrder& order) {
  std::ostringstream out;
  out << "budgets:";
  for (int b : order.budgets) out << ' ' << b;
  out << "\nsteps:";
  for (std::size_t s : order.steps) out << ' ' << s;
  out << '\n';
  return out.str();
}

StepOrder parse_step_order(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  StepOrder order;
  bool have_budgets = false;
  bool have_steps = false;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos) throw StructuralError("step-order line without a key: " + line);
    const std::string key = line.substr(0, colon);
    std::istringstream values(line.substr(colon + 1));
    std::string token;
    if (key == "budgets" && !have_budgets) {
      while (values >> token) {
        try {
          order.budgets.push_back(std::stoi(token));
        } catch (const std::exception&) {
          throw StructuralError("bad budget '" + token + "'");
        }
      }
      have_budgets = true;
    } else if (key == "steps" && !have_steps) {
      while (values >> token) {
        if (token.find_first_not_of("0123456789") != std::string::npos) {
          throw StructuralError("bad step '" + token + "'");
        }
        order.steps.push_back(std::stoull(token));
      }
      have_steps = true;
    } else {
      throw StructuralError("unexpected step-order line: " + line);
    }
  }
  if (!have_budgets || !have_steps) throw StructuralError("step-order file needs budgets and steps");
  validate(order);
  return order;
}

void save_step_order(const StepOrder& order, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << format_step_order(order);
}

StepOrder load_step_order(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open step-order file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_step_order(buffer.str());
}

}  // namespace anyforest
