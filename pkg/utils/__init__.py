from utils.config import CFG
