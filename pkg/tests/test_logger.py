import logging

from utils.logger import setup_logger


def test_file_logging(tmp_path):
    logger = setup_logger(name="MOCRSolverTest", log_to_file=True, log_dir=tmp_path)
    logger.debug("layer 1 done")
    for handler in logger.handlers:
        handler.flush()
    files = list(tmp_path.glob("app_*.log"))
    assert len(files) == 1
    assert "layer 1 done" in files[0].read_text(encoding="utf-8")
    logger.handlers.clear()


def test_console_level():
    logger = setup_logger(name="MOCRSolverTest", level=logging.WARNING)
    assert len(logger.handlers) == 1
    assert logger.handlers[0].level == logging.WARNING
    logger.handlers.clear()
