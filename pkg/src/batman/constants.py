HASH_SIZE = 32
ZERO_HASH = bytes(HASH_SIZE)

UINT256_MAX = (1 << 256) - 1

KEY_CONTRACT_CODE = b"batman/key-management/v1"
REPUTATION_CONTRACT_CODE = b"batman/reputation/v1"

METHODS = ("ml", "mlt", "mle", "mlm")

SWEEP_CSV_COLUMNS = ("method", "T", "s", "N_e", "node", "seed", "true_p", "final_estimate", "mae", "var")
TRACE_CSV_COLUMNS = ("tick", "node", "true_p", "ml", "mlt", "mle", "mlm")

# Table 2 grid bounds: (min, max, step)
DEFAULT_T_RANGE = (500, 5000, 500)
DEFAULT_WINDOW_RANGE = (100, 300, 25)
