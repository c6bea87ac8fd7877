"""Oracle values frozen by tests/derived.py (dense elimination)."""

FROZEN = {'balanced_tensor_M2': 4,
 'cli_excision_corner': {'cofibre': True, 'exact': True, 'exit': 0},
 'cli_hh_q': {'betti': [1, 0, 0], 'exit': 0},
 'cochain_dual_jet11': [2, 1, 1, 1],
 'cochain_q': [1, 0, 0],
 'commutator_dim_M2': 3,
 'corner_ideal_comparison': True,
 'cyclic_q_ranks': {'B': [1, 0, 1, 0], 'b': [0, 1, 0, 1]},
 'excision_corner': {'betti': {'E': [2, 0, 0, 0], 'I': [1, 0, 0, 0], 'Q': [1, 0, 0, 0]},
                     'cofibre': True,
                     'exact': True,
                     'h_unital_failure': None,
                     'rank_connecting': [0, 0, 0, 0]},
 'excision_nilpotent': {'betti': {'E': [2, 1, 1, 1], 'I': [1, 1, 1, 1], 'Q': [1, 0, 0, 0]},
                        'cofibre': True,
                        'exact': True,
                        'h_unital_failure': 1,
                        'rank_connecting': [0, 0, 0, 0]},
 'excision_sum': {'betti': {'E': [2, 0, 0], 'I': [1, 0, 0], 'Q': [1, 0, 0]},
                  'cofibre': True,
                  'exact': True,
                  'h_unital_failure': None,
                  'rank_connecting': [0, 0, 0]},
 'filtration_corner': {'quasi_iso': True, 'witness': None},
 'filtration_nilpotent': {'quasi_iso': False, 'witness': 1},
 'hc0_M2': 1,
 'hc_q': [1, 0, 1, 0, 1],
 'hh0_M2': 1,
 'hh_M2': [1, 0, 0, 0],
 'hh_jet11': [2, 1, 1, 1],
 'hh_q': [1, 0, 0, 0],
 'hkr_jet22_k2': {'dim': 3, 'k_after_j_is_identity': True},
 'hp_M2': [1, 0],
 'hp_q': [1, 0],
 'hp_trunc2': [1, 0],
 'hp_trunc3': [1, 0],
 'les_nilpotent_exact': True,
 'nonunital_M2_comparison': True,
 'nonunital_zero_betti': [1, 1, 1, 1],
 'omega1_jet11': 1,
 'omega1_jet21': 3,
 'sbi_M2': {'HC': [1, 0, 1, 0], 'HH': [1, 0, 0, 0], 'exact': True},
 'sbi_jet11': {'HC': [2, 0, 2, 0], 'HH': [2, 1, 1, 1], 'exact': True},
 'sbi_q': {'HC': [1, 0, 1, 0], 'HH': [1, 0, 0, 0], 'exact': True},
 'toy_cone': {'Q': [0, 1, 0], 'cone': [0, 1, 0]},
 'toy_les_exact_ideal': {'betti_E': [1, 1], 'betti_Q': [1, 1], 'p_iso': [True, True]},
 'unitalization_q_split': True}
