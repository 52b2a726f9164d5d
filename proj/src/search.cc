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

#include "search.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>

namespace orsched {

SearchModel CompileModel(const Instance& instance,
                         std::span<const ItemSpec> items) {
  SearchModel model;
  const int horizon = instance.horizon;
  model.horizon = horizon;

  std::map<std::pair<int, int>, int> capacity;
  for (const SessionCapacity& c : instance.capacities) {
    capacity[{c.or_id, c.session}] = c.duration;
  }
  for (const MssSlot& s : instance.mss) {
    auto it = capacity.find({s.or_id, s.session});
    model.slots.push_back({s.or_id, s.session, s.day, s.specialty,
                           it == capacity.end() ? 0 : it->second});
  }
  std::sort(model.slots.begin(), model.slots.end(),
            [](const SearchModel::Slot& a, const SearchModel::Slot& b) {
              return std::tie(a.day, a.or_id, a.session) <
                     std::tie(b.day, b.or_id, b.session);
            });

  std::map<int, int> place_of;  // ward -> place
  std::map<std::pair<int, int>, int> beds;
  for (const BedAvailability& b : instance.beds) {
    beds[{b.ward, b.day}] = b.available;
    place_of.emplace(b.ward, 0);
  }
  std::map<int, int> group_of;
  for (const ItemSpec& spec : items) {
    const int specialty = instance.registrations[spec.registration].specialty;
    place_of.emplace(specialty, 0);
    group_of.emplace(specialty, 0);
  }
  int next = 0;
  for (auto& [ward, place] : place_of) {
    place = next++;
    for (int day = 1; day <= horizon; ++day) {
      auto it = beds.find({ward, day});
      model.cell_capacity.push_back(it == beds.end() ? 0 : it->second);
      model.cell_ward.push_back(ward);
      model.cell_day.push_back(day);
    }
  }
  next = 0;
  for (auto& [specialty, group] : group_of) group = next++;
  model.num_groups = next;

  model.profile_start.push_back(0);
  for (const ItemSpec& spec : items) {
    const Registration& r = instance.registrations[spec.registration];
    SearchModel::Item item;
    item.registration = spec.registration;
    item.registration_id = r.id;
    item.priority = r.priority;
    item.duration = r.surgery_duration;
    item.group = group_of.at(r.specialty);
    item.unassigned_penalty = spec.unassigned_penalty;
    item.hard = spec.hard;
    item.day_cost.assign(horizon + 1, 0);
    for (size_t d = 0; d < spec.day_cost.size() && d <= size_t(horizon); ++d) {
      item.day_cost[d] = spec.day_cost[d];
    }
    for (size_t s = 0; s < model.slots.size(); ++s) {
      if (model.slots[s].specialty == r.specialty) {
        item.slots.push_back(static_cast<int>(s));
      }
    }
    model.items.push_back(std::move(item));

    model.profile_start.push_back(static_cast<int>(model.profile_cells.size()));
    for (int day = 1; day <= horizon; ++day) {
      for (const StayRecord& stay : ExpandStays(r, day, horizon)) {
        model.profile_cells.push_back(place_of.at(stay.place) * horizon +
                                      stay.day - 1);
      }
      model.profile_start.push_back(
          static_cast<int>(model.profile_cells.size()));
    }
  }
  return model;
}

void SearchState::IndexSet::Insert(int item, std::vector<int>& pos) {
  pos[item] = static_cast<int>(items.size());
  items.push_back(item);
}

void SearchState::IndexSet::Erase(int item, std::vector<int>& pos) {
  const int p = pos[item];
  const int last = items.back();
  items[p] = last;
  pos[last] = p;
  items.pop_back();
}

SearchState::SearchState(const SearchModel& model)
    : model_(&model),
      slot_of_(model.items.size(), -1),
      load_(model.slots.size(), 0),
      occupancy_(model.cell_capacity.size(), 0),
      members_(model.slots.size()),
      member_pos_(model.items.size(), -1),
      unassigned_(model.num_groups),
      assigned_(model.num_groups),
      group_pos_(model.items.size(), -1),
      all_pos_(model.items.size(), -1) {
  for (size_t i = 0; i < model.items.size(); ++i) {
    const SearchModel::Item& item = model.items[i];
    cost_ += item.unassigned_penalty;
    if (item.hard) ++hard_unassigned_;
    unassigned_[item.group].Insert(static_cast<int>(i), group_pos_);
    all_unassigned_.Insert(static_cast<int>(i), all_pos_);
  }
}

bool SearchState::CanAdd(int item, int slot) const {
  const SearchModel& m = *model_;
  const SearchModel::Slot& s = m.slots[slot];
  if (load_[slot] + m.items[item].duration > s.capacity) return false;
  for (int cell : m.Profile(item, s.day)) {
    if (occupancy_[cell] >= m.cell_capacity[cell]) return false;
  }
  return true;
}

void SearchState::DoAdd(int item, int slot) {
  const SearchModel& m = *model_;
  const SearchModel::Item& it = m.items[item];
  const int day = m.slots[slot].day;
  slot_of_[item] = slot;
  load_[slot] += it.duration;
  for (int cell : m.Profile(item, day)) ++occupancy_[cell];
  cost_ += it.day_cost[day] - it.unassigned_penalty;
  if (it.hard) --hard_unassigned_;
  members_[slot].Insert(item, member_pos_);
  unassigned_[it.group].Erase(item, group_pos_);
  assigned_[it.group].Insert(item, group_pos_);
  all_unassigned_.Erase(item, all_pos_);
  all_assigned_.Insert(item, all_pos_);
}

void SearchState::DoRemove(int item) {
  const SearchModel& m = *model_;
  const SearchModel::Item& it = m.items[item];
  const int slot = slot_of_[item];
  const int day = m.slots[slot].day;
  slot_of_[item] = -1;
  load_[slot] -= it.duration;
  for (int cell : m.Profile(item, day)) --occupancy_[cell];
  cost_ += it.unassigned_penalty - it.day_cost[day];
  if (it.hard) ++hard_unassigned_;
  members_[slot].Erase(item, member_pos_);
  assigned_[it.group].Erase(item, group_pos_);
  unassigned_[it.group].Insert(item, group_pos_);
  all_assigned_.Erase(item, all_pos_);
  all_unassigned_.Insert(item, all_pos_);
}

void SearchState::Add(int item, int slot) {
  journal_.emplace_back(item, -1);
  DoAdd(item, slot);
}

void SearchState::Remove(int item) {
  journal_.emplace_back(item, slot_of_[item]);
  DoRemove(item);
}

bool SearchState::AddFirstFit(int item) {
  for (int slot : model_->items[item].slots) {
    if (CanAdd(item, slot)) {
      Add(item, slot);
      return true;
    }
  }
  return false;
}

void SearchState::Rollback(size_t mark) {
  while (journal_.size() > mark) {
    const auto [item, previous] = journal_.back();
    journal_.pop_back();
    if (previous < 0) {
      DoRemove(item);
    } else {
      DoAdd(item, previous);
    }
  }
}

void LoadAssignment(SearchState& state, const std::vector<int>& slot_of) {
  for (size_t i = 0; i < slot_of.size(); ++i) {
    if (state.slot_of(static_cast<int>(i)) >= 0) state.Remove(static_cast<int>(i));
  }
  for (size_t i = 0; i < slot_of.size(); ++i) {
    if (slot_of[i] >= 0) state.Add(static_cast<int>(i), slot_of[i]);
  }
  state.Commit();
}

void GreedyFill(SearchState& state, std::span<const int> order) {
  for (int item : order) {
    if (state.slot_of(item) < 0) state.AddFirstFit(item);
  }
  state.Commit();
}

std::vector<int> ConstructionOrder(const SearchModel& model, Rng* rng) {
  std::vector<int> order(model.items.size());
  std::iota(order.begin(), order.end(), 0);
  if (rng != nullptr) rng->Shuffle(order);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    const SearchModel::Item& x = model.items[a];
    const SearchModel::Item& y = model.items[b];
    if (x.hard != y.hard) return x.hard;
    return x.unassigned_penalty > y.unassigned_penalty;
  });
  return order;
}

namespace {

template <typename T>
int Pick(Rng& rng, std::span<const T> values) {
  return values[rng.Index(values.size())];
}

// Tries to place a few random unassigned items of `group` anywhere.
void Refill(SearchState& state, Rng& rng, int group, int tries) {
  for (int t = 0; t < tries; ++t) {
    const auto pool = state.Unassigned(group);
    if (pool.empty()) return;
    state.AddFirstFit(Pick(rng, pool));
  }
}

bool MoveInsert(SearchState& state, Rng& rng) {
  const auto pool = state.AllUnassigned();
  if (pool.empty()) return false;
  return state.AddFirstFit(Pick(rng, pool));
}

// Ejects a victim to make room for an unassigned item, then tries to place
// the victim (or another waiting item) elsewhere.
bool MoveEjectInsert(SearchState& state, Rng& rng) {
  const SearchModel& m = state.model();
  const auto pool = state.AllUnassigned();
  if (pool.empty()) return false;
  const int u = Pick(rng, pool);
  const SearchModel::Item& item = m.items[u];
  if (item.slots.empty()) return false;
  const int target = Pick(rng, std::span<const int>(item.slots));

  int victim = -1;
  const auto members = state.Members(target);
  if (!members.empty() && rng.Below(2) == 0) {
    victim = Pick(rng, members);
  } else {
    const auto peers = state.Assigned(item.group);
    if (peers.empty()) return false;
    victim = Pick(rng, peers);
  }
  if (m.items[victim].hard && !item.hard) return false;
  state.Remove(victim);
  if (state.CanAdd(u, target)) {
    state.Add(u, target);
  } else if (!state.AddFirstFit(u)) {
    return false;
  }
  if (!state.AddFirstFit(victim)) Refill(state, rng, item.group, 2);
  return true;
}

// Clears as many members of one slot as needed, cheapest first, so that an
// unassigned item fits there; the victims are then offered any free room.
bool MoveEjectChain(SearchState& state, Rng& rng) {
  const SearchModel& m = state.model();
  const auto pool = state.AllUnassigned();
  if (pool.empty()) return false;
  const int u = Pick(rng, pool);
  const SearchModel::Item& item = m.items[u];
  if (item.slots.empty()) return false;
  const int target = Pick(rng, std::span<const int>(item.slots));
  const auto members = state.Members(target);
  if (members.empty()) return false;

  std::vector<int> order(members.begin(), members.end());
  rng.Shuffle(order);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return m.items[a].unassigned_penalty < m.items[b].unassigned_penalty;
  });
  std::vector<int> victims;
  for (int v : order) {
    if (state.CanAdd(u, target)) break;
    if (m.items[v].hard && !item.hard) continue;
    state.Remove(v);
    victims.push_back(v);
  }
  if (victims.empty() || !state.CanAdd(u, target)) return false;
  state.Add(u, target);
  for (int v : victims) state.AddFirstFit(v);
  Refill(state, rng, item.group, 2);
  return true;
}

bool MoveRelocate(SearchState& state, Rng& rng) {
  const SearchModel& m = state.model();
  const auto assigned = state.AllAssigned();
  if (assigned.empty()) return false;
  const int a = Pick(rng, assigned);
  const auto& slots = m.items[a].slots;
  if (slots.size() < 2) return false;
  const int target = slots[rng.Index(slots.size())];
  if (target == state.slot_of(a)) return false;
  state.Remove(a);
  if (!state.CanAdd(a, target)) return false;
  state.Add(a, target);
  Refill(state, rng, m.items[a].group, 2);
  return true;
}

bool MoveSwap(SearchState& state, Rng& rng) {
  const SearchModel& m = state.model();
  const auto assigned = state.AllAssigned();
  if (assigned.size() < 2) return false;
  const int a = Pick(rng, assigned);
  const int b = Pick(rng, state.Assigned(m.items[a].group));
  const int sa = state.slot_of(a);
  const int sb = state.slot_of(b);
  if (sa == sb) return false;
  state.Remove(a);
  state.Remove(b);
  if (!state.CanAdd(a, sb)) return false;
  state.Add(a, sb);
  if (!state.CanAdd(b, sa)) return false;
  state.Add(b, sa);
  Refill(state, rng, m.items[a].group, 2);
  return true;
}

}  // namespace

SearchResult LocalSearch(SearchState& state, Rng& rng,
                         const SearchBudget& budget,
                         const ImprovementCallback& on_improvement) {
  SearchResult result;
  state.Commit();
  int64_t stall = 0;
  int64_t iteration = 0;
  for (;; ++iteration) {
    if (budget.max_iterations > 0 && iteration >= budget.max_iterations) {
      result.budget_exhausted = true;
      break;
    }
    if ((iteration & 255) == 0 &&
        (budget.stop.stop_requested() ||
         std::chrono::steady_clock::now() >= budget.deadline)) {
      result.budget_exhausted = true;
      break;
    }
    if (stall >= budget.max_stall) {
      result.stalled = true;
      break;
    }
    const int64_t before = state.cost();
    const size_t mark = state.Mark();
    const bool has_waiting = !state.AllUnassigned().empty();
    const double r = rng.Uniform01();
    bool applied;
    if (has_waiting && r < 0.15) {
      applied = MoveInsert(state, rng);
    } else if (has_waiting && r < 0.4) {
      applied = MoveEjectInsert(state, rng);
    } else if (has_waiting && r < 0.6) {
      applied = MoveEjectChain(state, rng);
    } else if (r < 0.8) {
      applied = MoveRelocate(state, rng);
    } else {
      applied = MoveSwap(state, rng);
    }
    if (!applied || state.cost() > before) {
      state.Rollback(mark);
      ++stall;
      continue;
    }
    state.Commit();
    if (state.cost() < before) {
      stall = 0;
      if (on_improvement) on_improvement(state);
    } else {
      ++stall;
    }
  }
  result.iterations = iteration;
  result.best = state.assignment();
  result.best_cost = state.cost();
  result.best_hard_unassigned = state.hard_unassigned();
  return result;
}

}  // namespace orsched
