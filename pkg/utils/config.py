class CFG:
    # Command-line guards
    max_rows = 8
    oracle_cap_bits = 40
    verify_max_cols = 8

    # Deletion-contraction fan-out when --parallel is given
    parallel_workers = 4
    parallel_depth = 3

    output_format = "text"

    log_level = "WARNING"
    log_format = '%(asctime)s - %(levelname)s - %(message)s'
    log_file = None

    piece_suffix = ".piece"
    builtin_pieces = ["rook", "bishop", "queen", "knight", "nightrider"]
