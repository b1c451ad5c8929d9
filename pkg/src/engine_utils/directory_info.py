import os


class DirectoryInfo(object):
    file_path = __file__
    utils_dir = os.path.dirname(file_path)
    src_dir = os.path.dirname(utils_dir)
    project_dir = os.path.dirname(src_dir)

    @classmethod
    def get_problem_dir(cls):
        return os.path.join(cls.project_dir, 'problems')

    @classmethod
    def resolve(cls, path: str) -> str:
        if os.path.isabs(path) or os.path.exists(path):
            return os.path.abspath(path)
        return os.path.join(cls.project_dir, path)
