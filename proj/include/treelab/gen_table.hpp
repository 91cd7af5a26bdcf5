#pragma once

#include <string>
#include <vector>

#include "treelab/pair_graph.hpp"

namespace treelab {

// Reference table for the generator action on the 36-element basis reached
// from four disjoint pairs: per item, its label and the merge targets as
// (multiplicity, item index) pairs.
struct TableItem {
  const char* label;
  std::vector<std::pair<long, int>> targets;
};

const std::vector<TableItem>& reference_table();

struct TableRowCheck {
  int item;
  std::string label;
  std::string derived;    // rendered derived transitions
  std::string reference;  // rendered reference transitions
  bool match;
  std::string note;  // analysis for known-defective reference rows
};

// Derive transitions for every item with the generator and compare with the
// reference multiset.
std::vector<TableRowCheck> check_reference_table();

// Render the marked 5-element block (diagonal + targets), including the note
// on the published three-vertex row whose transition multiplicities are
// inconsistent with the pair-count law.
std::string render_marked_block();

}  // namespace treelab
