// Copyright 2026 The orsched Authors
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

#ifndef ORSCHED_SEARCH_H_
#define ORSCHED_SEARCH_H_

#include <chrono>
#include <cstdint>
#include <functional>
#include <span>
#include <stop_token>
#include <vector>

#include "model.h"
#include "rng.h"

namespace orsched {

// Per-registration input to CompileModel. Costs are already scalarized: the
// caller picks weights so that the scalar order equals its lexicographic
// order.
struct ItemSpec {
  int registration = 0;            // index into instance.registrations
  int64_t unassigned_penalty = 0;  // paid while the item is unassigned
  bool hard = false;               // must be assigned in a feasible outcome
  std::vector<int64_t> day_cost;   // paid while assigned on day d; may be empty
};

// Packing problem compiled from an instance: items go into OR slots subject
// to slot minutes and per-(ward, day) bed counts.
struct SearchModel {
  struct Slot {
    int or_id = 0;
    int session = 0;
    int day = 1;
    int specialty = 0;
    int capacity = 0;
  };
  struct Item {
    int registration = 0;
    int registration_id = 0;
    int priority = 3;
    int duration = 0;
    int group = 0;  // dense specialty index
    int64_t unassigned_penalty = 0;
    bool hard = false;
    std::vector<int64_t> day_cost;  // size horizon + 1
    std::vector<int> slots;         // compatible slots, (day, OR, session)
  };

  int horizon = 1;
  int num_groups = 0;
  std::vector<Slot> slots;  // sorted by (day, OR, session)
  std::vector<Item> items;
  std::vector<int> cell_capacity;  // bed cell = place * horizon + day - 1
  std::vector<int> cell_ward;
  std::vector<int> cell_day;

  // Bed cells used by `item` when operated on `day`.
  std::span<const int> Profile(int item, int day) const {
    const size_t k = static_cast<size_t>(item) * (horizon + 1) + day;
    return {profile_cells.data() + profile_start[k],
            profile_cells.data() + profile_start[k + 1]};
  }

  std::vector<int> profile_start;
  std::vector<int> profile_cells;
};

SearchModel CompileModel(const Instance& instance,
                         std::span<const ItemSpec> items);

// Assignment state with O(profile) incremental updates and an undo journal.
class SearchState {
 public:
  explicit SearchState(const SearchModel& model);

  const SearchModel& model() const { return *model_; }
  int slot_of(int item) const { return slot_of_[item]; }
  const std::vector<int>& assignment() const { return slot_of_; }
  int64_t cost() const { return cost_; }
  int hard_unassigned() const { return hard_unassigned_; }
  int load(int slot) const { return load_[slot]; }
  int occupancy(int cell) const { return occupancy_[cell]; }

  bool CanAdd(int item, int slot) const;
  void Add(int item, int slot);
  void Remove(int item);
  // First compatible slot in model order that accepts the item.
  bool AddFirstFit(int item);

  size_t Mark() const { return journal_.size(); }
  void Rollback(size_t mark);
  void Commit() { journal_.clear(); }

  std::span<const int> Members(int slot) const { return members_[slot].items; }
  std::span<const int> Unassigned(int group) const {
    return unassigned_[group].items;
  }
  std::span<const int> Assigned(int group) const {
    return assigned_[group].items;
  }
  std::span<const int> AllUnassigned() const { return all_unassigned_.items; }
  std::span<const int> AllAssigned() const { return all_assigned_.items; }

 private:
  // Unordered set of item indices with O(1) insert/erase.
  struct IndexSet {
    std::vector<int> items;
    void Insert(int item, std::vector<int>& pos);
    void Erase(int item, std::vector<int>& pos);
  };

  void DoAdd(int item, int slot);
  void DoRemove(int item);

  const SearchModel* model_;
  std::vector<int> slot_of_;
  std::vector<int> load_;
  std::vector<int> occupancy_;
  int64_t cost_ = 0;
  int hard_unassigned_ = 0;
  std::vector<std::pair<int, int>> journal_;  // (item, previous slot)

  std::vector<IndexSet> members_;
  std::vector<int> member_pos_;
  std::vector<IndexSet> unassigned_;
  std::vector<IndexSet> assigned_;
  std::vector<int> group_pos_;
  IndexSet all_unassigned_;
  IndexSet all_assigned_;
  std::vector<int> all_pos_;
};

// Greedy construction: items in `order`, each into its first fitting slot.
void GreedyFill(SearchState& state, std::span<const int> order);

// Priority-stable construction order: hard items, then by decreasing
// unassigned penalty; ties keep model order or are shuffled by `rng`.
std::vector<int> ConstructionOrder(const SearchModel& model, Rng* rng);

struct SearchBudget {
  int64_t max_iterations = 0;  // 0 = unlimited
  int64_t max_stall = 2000;
  std::chrono::steady_clock::time_point deadline =
      std::chrono::steady_clock::time_point::max();
  std::stop_token stop;
};

struct SearchResult {
  std::vector<int> best;  // slot per item, -1 unassigned
  int64_t best_cost = 0;
  int best_hard_unassigned = 0;
  int64_t iterations = 0;
  bool stalled = false;
  bool budget_exhausted = false;
};

// Called with the state whenever it reaches a new best cost.
using ImprovementCallback = std::function<void(const SearchState&)>;

// Local search over insert, relocate, swap, eject-and-insert and eject
// chains (several members leave one slot to admit a waiting item). Moves that do not worsen the cost
// are kept so the search can walk plateaus; the best state seen is returned.
SearchResult LocalSearch(SearchState& state, Rng& rng,
                         const SearchBudget& budget,
                         const ImprovementCallback& on_improvement);

// Rebuilds a state from a slot-per-item vector.
void LoadAssignment(SearchState& state, const std::vector<int>& slot_of);

}  // namespace orsched

#endif  // ORSCHED_SEARCH_H_
