// placeholder translation unit; implementation pending
