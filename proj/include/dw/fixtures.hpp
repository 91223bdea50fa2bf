#pragma once

// Bundled example machines used by the corpus, the CLI and the test suites.

#include "dw/build.hpp"

namespace dw {

// forwards the most recent atom to the next `down` position, bot elsewhere
MealySUT atom_propagation_mealy();
// accepts words whose first letter appears again (multiple-use machine)
TwoWaySUT first_letter_multiuse();
// accepts words with at most three distinct letters
TwoWaySUT three_letters_automaton();
// reverses every maximal separator-free block in place
TwoWaySUT map_reverse_2way();
// accepts nonempty words whose first and last letters are equal
TwoWaySUT first_last_automaton();

}  // namespace dw
