import os
from dotenv import load_dotenv

load_dotenv()


class Config:
    # (e, eta) pairs as "e:eta,e:eta"; the default covers |q| in {1, 3, 5, 7, 9}
    GAMMA_PARAMS = os.environ.get('SOLVKNOT_GAMMA_PARAMS') or '-2:1,-2:-1,0:1,0:-1,2:1,2:-1'
    SEARCH_RADIUS = int(os.environ.get('SOLVKNOT_SEARCH_RADIUS') or 6)
    RANDOM_SEED = int(os.environ.get('SOLVKNOT_RANDOM_SEED') or 2024)
    ORACLE_TRIALS = int(os.environ.get('SOLVKNOT_ORACLE_TRIALS') or 1000)
    OUT_CLOSURE_BOUND = int(os.environ.get('SOLVKNOT_OUT_CLOSURE_BOUND') or 48)

    OUTPUT_FORMAT = os.environ.get('SOLVKNOT_OUTPUT_FORMAT') or 'json'
    REPORT_DIR = os.environ.get('SOLVKNOT_REPORT_DIR') or 'reports'
    LOG_LEVEL = os.environ.get('SOLVKNOT_LOG_LEVEL', 'WARNING').upper()

    REPORT_SCHEMA_VERSION = '1'
